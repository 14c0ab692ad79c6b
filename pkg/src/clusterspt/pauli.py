"""Exact arithmetic in the signed Pauli group over L sites and its linear span.

A group element is stored in symplectic form as i**phase_exp * X**x_mask * Z**z_mask,
with one X/Z bit per site.  Site indices are 1-based and site 1 occupies the most
significant bit of each mask, matching the basis ordering used by the numerical
backend.  Y on a site is the pair x=z=1 together with one factor of i in the phase,
so every letter string built from {I, X, Y, Z} with a +1 prefix is Hermitian.

All values are immutable and every operation is a pure function.
"""

from __future__ import annotations

import re

from .errors import LengthMismatchError

# letter -> (x_bit, z_bit)
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LETTER = {v: k for k, v in _LETTER_BITS.items()}
_PHASE_LABEL = {0: "+1", 1: "+i", 2: "-1", 3: "-i"}
_LABEL_PHASE = {"+1": 0, "1": 0, "+": 0, "+i": 1, "i": 1, "-1": 2, "-": 2, "-i": 3}
_PHASE_VALUE = (1, 1j, -1, -1j)

# Coefficients at or below this magnitude are dropped during canonicalization.
# Pauli commutators cancel exactly in integer phases; the threshold only guards
# float dust introduced by scalar coefficients.
COEFF_TOL = 1e-12

_COMPACT_RE = re.compile(r"([IXYZ])(\d+)")


def _check_same_length(a, b):
    if a.length != b.length:
        raise LengthMismatchError(
            f"chain lengths differ: {a.length} vs {b.length}")


def _site_bit(length: int, site: int) -> int:
    if not 1 <= site <= length:
        raise IndexError(f"site {site} outside 1..{length}")
    return 1 << (length - site)


class PauliString:
    """One signed Pauli group element: i**phase_exp * X**x_mask * Z**z_mask."""

    __slots__ = ("length", "phase_exp", "x_mask", "z_mask")

    def __init__(self, length: int, phase_exp: int, x_mask: int, z_mask: int):
        if length < 1:
            raise ValueError("length must be positive")
        full = (1 << length) - 1
        object.__setattr__(self, "length", length)
        object.__setattr__(self, "phase_exp", phase_exp % 4)
        object.__setattr__(self, "x_mask", x_mask & full)
        object.__setattr__(self, "z_mask", z_mask & full)

    def __setattr__(self, name, value):
        raise AttributeError("PauliString is immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def identity(cls, length: int) -> "PauliString":
        return cls(length, 0, 0, 0)

    @classmethod
    def from_letters(cls, letters: str, phase_exp: int = 0) -> "PauliString":
        """Build from a letter string, e.g. 'ZXZ' on 3 sites (site 1 first).

        The stored phase picks up one i per Y so the letters mean literal
        sigma matrices: from_letters('Y') is Hermitian sigma^y.
        """
        x = z = 0
        n_y = 0
        for ch in letters:
            try:
                xb, zb = _LETTER_BITS[ch]
            except KeyError:
                raise ValueError(f"invalid Pauli letter {ch!r}") from None
            x = (x << 1) | xb
            z = (z << 1) | zb
            n_y += xb & zb
        return cls(len(letters), phase_exp + n_y, x, z)

    @classmethod
    def from_label(cls, text: str) -> "PauliString":
        """Parse the canonical text form: optional prefix in {+1,-1,+i,-i}
        followed by letters, e.g. '+1 ZXZIIIIII' or '-i Y'."""
        parts = text.split()
        if len(parts) == 1:
            prefix, letters = "+1", parts[0]
        elif len(parts) == 2:
            prefix, letters = parts
        else:
            raise ValueError(f"cannot parse Pauli label {text!r}")
        try:
            k = _LABEL_PHASE[prefix]
        except KeyError:
            raise ValueError(f"invalid phase prefix {prefix!r}") from None
        return cls.from_letters(letters, phase_exp=k)

    @classmethod
    def single(cls, length: int, site: int, letter: str) -> "PauliString":
        """One non-identity letter at a 1-based site, identity elsewhere."""
        try:
            xb, zb = _LETTER_BITS[letter.upper()]
        except KeyError:
            raise ValueError(f"invalid Pauli letter {letter!r}") from None
        bit = _site_bit(length, site)
        return cls(length, xb & zb, bit if xb else 0, bit if zb else 0)

    @classmethod
    def from_sites(cls, length: int, assignments) -> "PauliString":
        """Product of single-site letters, e.g. from_sites(9, {1:'Z', 2:'X', 3:'Z'}).

        Distinct sites commute, so the result is independent of dict order.
        """
        out = cls.identity(length)
        for site, letter in assignments.items():
            out = out * cls.single(length, site, letter)
        return out

    @classmethod
    def from_compact(cls, text: str, length: int) -> "PauliString":
        """Parse probe syntax like 'X5' or 'Z1Z9' (letter then 1-based site)."""
        text = text.strip().upper()
        if not text or _COMPACT_RE.sub("", text):
            raise ValueError(f"invalid probe name {text!r}")
        out = cls.identity(length)
        for letter, site in _COMPACT_RE.findall(text):
            out = out * cls.single(length, int(site), letter)
        return out

    # -- presentation --------------------------------------------------

    def letter_at(self, site: int) -> str:
        bit = _site_bit(self.length, site)
        return _BITS_LETTER[(1 if self.x_mask & bit else 0,
                             1 if self.z_mask & bit else 0)]

    @property
    def letters(self) -> str:
        return "".join(self.letter_at(j) for j in range(1, self.length + 1))

    @property
    def display_phase_exp(self) -> int:
        """Exponent k of the printed prefix i**k relative to the letter string.

        The letters absorb one i per Y, so k = phase_exp - (#Y) mod 4 and the
        canonical text form is i**k times a Hermitian letter string.
        """
        return (self.phase_exp - (self.x_mask & self.z_mask).bit_count()) % 4

    @property
    def phase(self) -> complex:
        """The scalar i**phase_exp multiplying X**x * Z**z."""
        return _PHASE_VALUE[self.phase_exp]

    def label(self) -> str:
        return f"{_PHASE_LABEL[self.display_phase_exp]} {self.letters}"

    def __str__(self):
        return self.label()

    def __repr__(self):
        return f"PauliString({self.label()!r})"

    # -- group structure -----------------------------------------------

    def __mul__(self, other: "PauliString") -> "PauliString":
        if not isinstance(other, PauliString):
            return NotImplemented
        _check_same_length(self, other)
        # X**x Z**z . X**x' Z**z' : commuting Z**z past X**x' costs (-1)**(z.x')
        e = (self.phase_exp + other.phase_exp
             + 2 * (self.z_mask & other.x_mask).bit_count())
        return PauliString(self.length, e,
                           self.x_mask ^ other.x_mask,
                           self.z_mask ^ other.z_mask)

    def adjoint(self) -> "PauliString":
        e = (-self.phase_exp + 2 * (self.x_mask & self.z_mask).bit_count()) % 4
        return PauliString(self.length, e, self.x_mask, self.z_mask)

    def commutes_with(self, other: "PauliString") -> bool:
        """True iff the symplectic form <x,z'> + <z,x'> vanishes mod 2.

        Phases never matter for (anti)commutation.
        """
        if not isinstance(other, PauliString):
            raise TypeError("expected a PauliString")
        _check_same_length(self, other)
        return (((self.x_mask & other.z_mask).bit_count()
                 + (self.z_mask & other.x_mask).bit_count()) % 2) == 0

    @property
    def is_hermitian(self) -> bool:
        return (self.phase_exp + (self.x_mask & self.z_mask).bit_count()) % 2 == 0

    @property
    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0 and self.phase_exp == 0

    def support(self) -> frozenset:
        """Set of 1-based sites carrying a non-identity letter."""
        m = self.x_mask | self.z_mask
        return frozenset(j for j in range(1, self.length + 1)
                         if m & _site_bit(self.length, j))

    @property
    def weight(self) -> int:
        return (self.x_mask | self.z_mask).bit_count()

    # -- value semantics -------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, PauliString)
                and self.length == other.length
                and self.phase_exp == other.phase_exp
                and self.x_mask == other.x_mask
                and self.z_mask == other.z_mask)

    def __hash__(self):
        return hash((self.length, self.phase_exp, self.x_mask, self.z_mask))


def multiply(p: PauliString, q: PauliString) -> PauliString:
    """Group product p*q with exact phase bookkeeping."""
    return p * q


def commutes(p: PauliString, q: PauliString) -> bool:
    """Whether two group elements commute (symplectic-form test)."""
    return p.commutes_with(q)


def weight_support(p: PauliString) -> frozenset:
    """1-based sites where p acts non-trivially."""
    return p.support()


class OperatorSum:
    """Finite complex linear combination of Pauli strings on L sites.

    Terms are keyed by (x_mask, z_mask) with the string's i**phase_exp folded
    into the coefficient, so there is at most one entry per mask pair and the
    zero operator is the empty map.
    """

    __slots__ = ("length", "_terms")

    def __init__(self, length: int, terms=None, _skip_canonical=False):
        object.__setattr__(self, "length", length)
        object.__setattr__(self, "_terms", dict(terms) if terms else {})
        if not _skip_canonical:
            self._drop_small()

    def __setattr__(self, name, value):
        raise AttributeError("OperatorSum is immutable; build a new one")

    def _drop_small(self):
        dead = [k for k, c in self._terms.items() if abs(c) <= COEFF_TOL]
        for k in dead:
            del self._terms[k]

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, length: int) -> "OperatorSum":
        return cls(length)

    @classmethod
    def identity(cls, length: int) -> "OperatorSum":
        return cls(length, {(0, 0): 1.0 + 0j})

    @classmethod
    def from_pauli(cls, p: PauliString, coeff=1.0) -> "OperatorSum":
        c = complex(coeff) * p.phase
        return cls(p.length, {(p.x_mask, p.z_mask): c})

    @classmethod
    def from_terms(cls, length: int, pairs) -> "OperatorSum":
        """Sum of (coeff, PauliString) pairs."""
        acc = {}
        for coeff, p in pairs:
            if p.length != length:
                raise LengthMismatchError(
                    f"term on {p.length} sites in a length-{length} sum")
            key = (p.x_mask, p.z_mask)
            acc[key] = acc.get(key, 0j) + complex(coeff) * p.phase
        return cls(length, acc)

    # -- inspection ------------------------------------------------------

    @property
    def term_count(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def items(self):
        """Raw (x_mask, z_mask) -> coeff pairs; coeff multiplies X**x * Z**z."""
        return self._terms.items()

    def iter_terms(self):
        """Yield (coeff, hermitian PauliString) with the Y phases pulled out of
        the coefficient, sorted deterministically by masks."""
        for (x, z) in sorted(self._terms):
            n_y = (x & z).bit_count()
            coeff = self._terms[(x, z)] * _PHASE_VALUE[(-n_y) % 4]
            yield coeff, PauliString(self.length, n_y, x, z)

    def coefficient(self, p: PauliString) -> complex:
        """Coefficient of the given string (its own phase divided out)."""
        c = self._terms.get((p.x_mask, p.z_mask), 0j)
        return c / p.phase

    def norm_bound(self) -> float:
        """Sum of |coeff|: an upper bound on the operator 2-norm, since each
        Pauli string is unitary."""
        return float(sum(abs(c) for c in self._terms.values()))

    def supports(self) -> frozenset:
        sites = set()
        for _, p in self.iter_terms():
            sites |= p.support()
        return frozenset(sites)

    # -- linear algebra ----------------------------------------------------

    def _binary(self, other, sign):
        _check_same_length(self, other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0j) + sign * c
        return OperatorSum(self.length, acc)

    def __add__(self, other):
        if not isinstance(other, OperatorSum):
            return NotImplemented
        return self._binary(other, 1)

    def __sub__(self, other):
        if not isinstance(other, OperatorSum):
            return NotImplemented
        return self._binary(other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, scalar):
        if isinstance(scalar, OperatorSum):
            return self.compose(scalar)
        c = complex(scalar)
        return OperatorSum(
            self.length, {k: v * c for k, v in self._terms.items()})

    def __rmul__(self, scalar):
        if isinstance(scalar, OperatorSum):
            return NotImplemented
        return self * scalar

    def __truediv__(self, scalar):
        return self * (1.0 / complex(scalar))

    def compose(self, other: "OperatorSum") -> "OperatorSum":
        """Operator product self . other, expanded term by term."""
        _check_same_length(self, other)
        acc = {}
        for (x1, z1), c1 in self._terms.items():
            for (x2, z2), c2 in other._terms.items():
                # (X^x1 Z^z1)(X^x2 Z^z2) = (-1)^(z1.x2) X^(x1^x2) Z^(z1^z2)
                sign = -1.0 if (z1 & x2).bit_count() % 2 else 1.0
                key = (x1 ^ x2, z1 ^ z2)
                acc[key] = acc.get(key, 0j) + sign * c1 * c2
        return OperatorSum(self.length, acc)

    def __matmul__(self, other):
        return self.compose(other)

    def adjoint(self) -> "OperatorSum":
        acc = {}
        for (x, z), c in self._terms.items():
            sign = -1.0 if (x & z).bit_count() % 2 else 1.0
            acc[(x, z)] = sign * c.conjugate()
        return OperatorSum(self.length, acc)

    @property
    def is_hermitian(self) -> bool:
        return (self - self.adjoint()).is_zero

    def allclose(self, other: "OperatorSum", tol: float = 1e-10) -> bool:
        _check_same_length(self, other)
        keys = set(self._terms) | set(other._terms)
        return all(abs(self._terms.get(k, 0j) - other._terms.get(k, 0j)) <= tol
                   for k in keys)

    # -- presentation -----------------------------------------------------

    def manifest_lines(self):
        """Deterministic text rendering, one term per line, ordered by the
        letter strings so diffs read naturally."""
        out = []
        for coeff, p in self.iter_terms():
            if abs(coeff.imag) <= COEFF_TOL:
                cs = f"{coeff.real:+.12g}"
            else:
                cs = f"({coeff.real:.12g}{coeff.imag:+.12g}j)"
            out.append((p.letters, f"{cs} {p.letters}"))
        return [line for _, line in sorted(out)]

    def __str__(self):
        if self.is_zero:
            return "0"
        return " ".join(self.manifest_lines())

    def __repr__(self):
        return f"OperatorSum(L={self.length}, terms={self.term_count})"

    def __eq__(self, other):
        return (isinstance(other, OperatorSum)
                and self.length == other.length
                and self.allclose(other, tol=0.0))

    def __hash__(self):
        raise TypeError("OperatorSum is not hashable")


def commutator(a: OperatorSum, b: OperatorSum) -> OperatorSum:
    """AB - BA with exact phase bookkeeping; empty iff A and B commute."""
    if isinstance(a, PauliString):
        a = OperatorSum.from_pauli(a)
    if isinstance(b, PauliString):
        b = OperatorSum.from_pauli(b)
    return a.compose(b) - b.compose(a)


def anticommutator(a: OperatorSum, b: OperatorSum) -> OperatorSum:
    if isinstance(a, PauliString):
        a = OperatorSum.from_pauli(a)
    if isinstance(b, PauliString):
        b = OperatorSum.from_pauli(b)
    return a.compose(b) + b.compose(a)
