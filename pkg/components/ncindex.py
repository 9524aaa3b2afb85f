from fractions import Fraction
from typing import Dict, Iterable, List, Tuple, Union

from components.flags import FlagVector, L_from_f, flag_f, h_from_f
from components.poset import Poset, find_non_eulerian_interval, is_eulerian
from utils.errors import AlphabetMismatch, KindMismatch, NotEulerian, OddEWordPresent

ALPHABETS = {"AB": "ab", "CE": "ce", "CD": "cd"}
LETTER_DEGREE = {"a": 1, "b": 1, "c": 1, "e": 1, "d": 2}


def word_degree(word: str) -> int:
    return sum(LETTER_DEGREE[letter] for letter in word)


class NCPoly:
    """Polynomial in noncommuting letters over one of the alphabets ab, ce, cd."""

    def __init__(self, alphabet: str, terms: Dict[str, Union[int, Fraction]] = None):
        if alphabet not in ALPHABETS:
            raise AlphabetMismatch(f"unknown alphabet {alphabet!r}")
        letters = set(ALPHABETS[alphabet])
        clean = {}
        for word, value in (terms or {}).items():
            if not set(word) <= letters:
                raise AlphabetMismatch(f"word {word!r} is not over {alphabet}")
            value = Fraction(value)
            if value:
                clean[word] = value
        self.alphabet = alphabet
        self.terms: Dict[str, Fraction] = clean

    @classmethod
    def word(cls, alphabet: str, word: str, coeff: Union[int, Fraction] = 1) -> "NCPoly":
        return cls(alphabet, {word: coeff})

    def words(self) -> List[str]:
        """Words in canonical order: degree, then lexicographic."""
        return sorted(self.terms, key=lambda w: (word_degree(w), w))

    def degrees(self) -> set:
        return {word_degree(w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.terms.values())

    def coefficient(self, word: str) -> Fraction:
        return self.terms.get(word, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def _same_alphabet(self, other: "NCPoly") -> None:
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch(f"{self.alphabet} vs {other.alphabet}")

    def __add__(self, other: "NCPoly") -> "NCPoly":
        self._same_alphabet(other)
        acc = dict(self.terms)
        for w, v in other.terms.items():
            acc[w] = acc.get(w, Fraction(0)) + v
        return NCPoly(self.alphabet, acc)

    def __neg__(self) -> "NCPoly":
        return self.scale(-1)

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def scale(self, r: Union[int, Fraction]) -> "NCPoly":
        return NCPoly(self.alphabet, {w: v * r for w, v in self.terms.items()})

    def __mul__(self, other: Union["NCPoly", int, Fraction]) -> "NCPoly":
        if not isinstance(other, NCPoly):
            return self.scale(other)
        self._same_alphabet(other)
        acc: Dict[str, Fraction] = {}
        for w1, v1 in self.terms.items():
            for w2, v2 in other.terms.items():
                acc[w1 + w2] = acc.get(w1 + w2, Fraction(0)) + v1 * v2
        return NCPoly(self.alphabet, acc)

    __rmul__ = scale

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.alphabet, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"NCPoly({self.alphabet}: {self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in self.words():
            v = self.terms[w]
            body = w or "1"
            parts.append(body if v == 1 else f"{v}*{body}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "alphabet": self.alphabet,
            "terms": {w: [v.numerator, v.denominator] for w, v in sorted(self.terms.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "NCPoly":
        return cls(
            data["alphabet"],
            {w: Fraction(int(num), int(den)) for w, (num, den) in data["terms"].items()},
        )


def _expand(factors: Iterable[Dict[str, Fraction]], coeff: Fraction) -> Dict[str, Fraction]:
    """Multiplies out a sequence of letter substitutions, left to right."""
    acc: Dict[str, Fraction] = {"": coeff}
    for factor in factors:
        nxt: Dict[str, Fraction] = {}
        for prefix, v in acc.items():
            for piece, w in factor.items():
                key = prefix + piece
                nxt[key] = nxt.get(key, Fraction(0)) + v * w
        acc = {k: v for k, v in nxt.items() if v}
    return acc


def _accumulate(target: Dict[str, Fraction], terms: Dict[str, Fraction]) -> None:
    for w, v in terms.items():
        target[w] = target.get(w, Fraction(0)) + v


def ab_index(h: FlagVector) -> NCPoly:
    """Psi = sum_S h_S u_S with u_i = b iff i is in S."""
    if h.kind != "H":
        raise KindMismatch(f"ab_index needs an H flag vector, got {h.kind}")
    terms = {}
    for S, value in h.values.items():
        terms["".join("b" if S >> i & 1 else "a" for i in range(h.n))] = value
    return NCPoly("AB", terms)


HALF = Fraction(1, 2)
_AB_TO_CE = {
    "a": {"c": HALF, "e": HALF},
    "b": {"c": HALF, "e": -HALF},
}
_E_SQUARED = {"cc": Fraction(1), "d": Fraction(-2)}
_D_TO_CE = {"cc": HALF, "ee": -HALF}


def ab_to_ce(p: NCPoly) -> NCPoly:
    if p.alphabet != "AB":
        raise AlphabetMismatch(f"ab_to_ce needs an AB polynomial, got {p.alphabet}")
    acc: Dict[str, Fraction] = {}
    for word, value in p.terms.items():
        _accumulate(acc, _expand((_AB_TO_CE[letter] for letter in word), value))
    return NCPoly("CE", acc)


def _ce_factors(word: str) -> List[Dict[str, Fraction]]:
    factors = []
    i = 0
    while i < len(word):
        if word[i] == "c":
            factors.append({"c": Fraction(1)})
            i += 1
            continue
        j = i
        while j < len(word) and word[j] == "e":
            j += 1
        if (j - i) % 2:
            raise OddEWordPresent(f"word {word!r} has an e-run of odd length at position {i + 1}")
        factors.extend([_E_SQUARED] * ((j - i) // 2))
        i = j
    return factors


def ce_to_cd(p: NCPoly) -> NCPoly:
    """Rewrites each even e-run through e^2 = c^2 - 2d."""
    if p.alphabet != "CE":
        raise AlphabetMismatch(f"ce_to_cd needs a CE polynomial, got {p.alphabet}")
    acc: Dict[str, Fraction] = {}
    for word, value in p.terms.items():
        _accumulate(acc, _expand(_ce_factors(word), value))
    return NCPoly("CD", acc)


def cd_to_ce(p: NCPoly) -> NCPoly:
    if p.alphabet != "CD":
        raise AlphabetMismatch(f"cd_to_ce needs a CD polynomial, got {p.alphabet}")
    acc: Dict[str, Fraction] = {}
    for word, value in p.terms.items():
        factors = (_D_TO_CE if letter == "d" else {"c": Fraction(1)} for letter in word)
        _accumulate(acc, _expand(factors, value))
    return NCPoly("CE", acc)


def reverse(p: NCPoly) -> NCPoly:
    return NCPoly(p.alphabet, {w[::-1]: v for w, v in p.terms.items()})


def ce_index(P: Poset) -> NCPoly:
    return ab_to_ce(ab_index(h_from_f(flag_f(P))))


def require_eulerian(P: Poset) -> None:
    if not is_eulerian(P):
        u, v = find_non_eulerian_interval(P)
        raise NotEulerian("interval with nonzero alternating rank-sum", witness=[P.ids[u], P.ids[v]])


def cd_index(P: Poset) -> NCPoly:
    """flag f -> flag h -> ab-index -> ce-index -> cd-index."""
    require_eulerian(P)
    return ce_to_cd(ce_index(P))


def ce_coefficients_match_L(P: Poset) -> List[Tuple[int, Fraction, Fraction]]:
    """(S, ce coefficient, L_S) for every S where the two L routes disagree."""
    f = flag_f(P)
    L = L_from_f(f)
    ce = ab_to_ce(ab_index(h_from_f(f)))
    mismatches = []
    for S, value in L.values.items():
        word = "".join("e" if S >> i & 1 else "c" for i in range(f.n))
        if ce.coefficient(word) != value:
            mismatches.append((S, ce.coefficient(word), value))
    return mismatches
