"""Normal forms in the free product C_p * C_p on generators a and b.

Every element has a unique reduced shape

    a^{alpha_1} b^{beta_1} a^{alpha_2} b^{beta_2} ... b^{beta_m} a^{alpha_{m+1}}

with every beta_k nonzero mod p and every interior a-exponent nonzero; the
leading and trailing a-exponents may vanish. The count m of b-syllables is the
word's syllable length. GroupWord stores exactly this shape and is immutable
and hashable, so words serve directly as memo keys elsewhere.
"""

import random
import re

from .errors import InputError
from .fp import validate_odd_prime


class GroupWord:
    """A reduced word: leading a-exponent plus a tuple of (beta, alpha) syllable pairs.

    body[k] = (beta_{k+1}, alpha_{k+2}); only the last pair may carry alpha = 0.
    """

    __slots__ = ("p", "leading_a", "body", "_hash", "_ab")

    def __init__(self, p, leading_a, body):
        validate_odd_prime(p)
        if not 0 <= leading_a < p:
            raise InputError(f"leading a-exponent {leading_a} out of range for p={p}")
        body = tuple((int(b), int(a)) for b, a in body)
        last = len(body) - 1
        for k, (b, a) in enumerate(body):
            if not 1 <= b < p:
                raise InputError(f"b-syllable exponent {b} must be nonzero mod {p}")
            if k != last and not 1 <= a < p:
                raise InputError(f"interior a-exponent {a} must be nonzero mod {p}")
            if not 0 <= a < p:
                raise InputError(f"a-exponent {a} out of range for p={p}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "leading_a", leading_a)
        object.__setattr__(self, "body", body)
        ta = (leading_a + sum(a for _, a in body)) % p
        tb = sum(b for b, _ in body) % p
        object.__setattr__(self, "_ab", (ta, tb))
        object.__setattr__(self, "_hash", hash((p, leading_a, body)))

    def __setattr__(self, name, val):
        raise AttributeError("GroupWord is immutable")

    @classmethod
    def identity(cls, p):
        return cls(p, 0, ())

    @property
    def is_identity(self):
        return self.leading_a == 0 and not self.body

    @property
    def syllables(self):
        return len(self.body)

    def exponent_sums(self):
        """(total a-exponent, total b-exponent) mod p."""
        return self._ab

    def tokens(self):
        """Expand back to a (gen, exp) token list; zero exponents are omitted."""
        toks = []
        if self.leading_a:
            toks.append(("a", self.leading_a))
        for b, a in self.body:
            toks.append(("b", b))
            if a:
                toks.append(("a", a))
        return toks

    def sort_key(self):
        return (self.syllables, self.leading_a, self.body)

    def __mul__(self, other):
        return concat(self, other)

    def __invert__(self):
        return invert(self)

    def __pow__(self, n):
        return power(self, n)

    def __eq__(self, other):
        if not isinstance(other, GroupWord):
            return NotImplemented
        return self.p == other.p and self.leading_a == other.leading_a and self.body == other.body

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"GroupWord({format_word(self)!r}, p={self.p})"


def normalize(raw, p):
    """Reduce a (gen, exp) token sequence to its unique normal form.

    A single left-to-right pass over a stack reaches the fixpoint: merging two
    adjacent same-generator runs can only expose one earlier run, which the
    stack top already is.
    """
    validate_odd_prime(p)
    out = []  # alternating [gen, exp] with exp nonzero
    for gen, exp in raw:
        if gen not in ("a", "b"):
            raise InputError(f"unknown generator {gen!r}")
        if not isinstance(exp, int) or isinstance(exp, bool):
            raise InputError(f"exponent must be an integer, got {exp!r}")
        e = exp % p
        if e == 0:
            continue
        if out and out[-1][0] == gen:
            s = (out[-1][1] + e) % p
            if s == 0:
                out.pop()
            else:
                out[-1][1] = s
        else:
            out.append([gen, e])
    if not out:
        return GroupWord.identity(p)
    idx = 0
    lead = 0
    if out[0][0] == "a":
        lead = out[0][1]
        idx = 1
    body = []
    while idx < len(out):
        beta = out[idx][1]
        alpha = 0
        if idx + 1 < len(out):
            alpha = out[idx + 1][1]
            idx += 2
        else:
            idx += 1
        body.append((beta, alpha))
    return GroupWord(p, lead, tuple(body))


def syllable_length(w):
    """Number of b-syllables of a normal form."""
    return w.syllables


def concat(w1, w2):
    if w1.p != w2.p:
        raise InputError(f"modulus mismatch: {w1.p} vs {w2.p}")
    return normalize(w1.tokens() + w2.tokens(), w1.p)


def invert(w):
    return normalize([(g, -e) for g, e in reversed(w.tokens())], w.p)


def power(w, n):
    if n < 0:
        return power(invert(w), -n)
    result = GroupWord.identity(w.p)
    base = w
    while n:
        if n & 1:
            result = concat(result, base)
        n >>= 1
        if n:
            base = concat(base, base)
    return result


def random_word(p, max_syllables, rng):
    """A normal form with syllable length chosen uniformly in 0..max_syllables.

    Within each shape every exponent is uniform over its allowed range:
    beta and interior alpha over F_p \\ {0}, leading and trailing alpha over F_p.
    Deterministic given the rng (an int seed is also accepted).
    """
    validate_odd_prime(p)
    if max_syllables < 0:
        raise InputError("max_syllables must be >= 0")
    if isinstance(rng, int):
        rng = random.Random(rng)
    m = rng.randint(0, max_syllables)
    lead = rng.randrange(p)
    body = []
    for k in range(m):
        beta = rng.randrange(1, p)
        alpha = rng.randrange(1, p) if k < m - 1 else rng.randrange(p)
        body.append((beta, alpha))
    return GroupWord(p, lead, tuple(body))


_TOKEN_RE = re.compile(r"([ab])(?:\^(-?\d+))?$")


def parse_word(text, p):
    """Parse whitespace-separated tokens a, b, a^k, b^k; "1" or the empty
    string is the identity."""
    pieces = text.split()
    if pieces == ["1"]:
        return GroupWord.identity(p)
    toks = []
    for piece in pieces:
        m = _TOKEN_RE.match(piece)
        if m is None:
            raise InputError(f"cannot parse word token {piece!r}")
        exp = int(m.group(2)) if m.group(2) is not None else 1
        toks.append((m.group(1), exp))
    return normalize(toks, p)


def format_word(w):
    """Render a normal form in the same token format parse_word accepts."""
    if w.is_identity:
        return "1"
    parts = []
    for g, e in w.tokens():
        parts.append(g if e == 1 else f"{g}^{e}")
    return " ".join(parts)
