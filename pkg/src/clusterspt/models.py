"""Constructors for every named operator of the cluster-chain model family.

Covers the three-site stabilizers and their Hamiltonian, the four edge
generators and their 15 nontrivial products, the Ising-type perturbation, the
parity and edge-string symmetries, and the two-term global symmetries that
protect the fourfold ground space on open chains whose length is an odd
multiple of three.

Conventions.  The cluster term used throughout is Z X Z (Z on the neighbours,
X in the middle).  Some of the companion symmetry strings in circulation are
written for the dual convention with the roles of X and Z exchanged; those
literal forms are exposed unmodified (`parity_and_timereversal`) next to their
translations into this convention (`spin_flip_symmetries`), and a cross-check
reports where the literal forms fail instead of silently correcting them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType

from .clifford import conjugate_ucp
from .errors import DomainError
from .pauli import OperatorSum, PauliString

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class LatticeSpec:
    """Chain length and boundary condition."""

    length: int
    boundary: str = "open"

    def __post_init__(self):
        if self.boundary not in ("open", "periodic"):
            raise DomainError(f"unknown boundary {self.boundary!r}")
        if self.length < 3:
            raise DomainError("chain needs at least 3 sites")

    @property
    def is_open(self) -> bool:
        return self.boundary == "open"

    @property
    def is_periodic(self) -> bool:
        return self.boundary == "periodic"

    def site_mod(self, i: int) -> int:
        """Wrap a site index onto 1..L (periodic arithmetic)."""
        return (i - 1) % self.length + 1

    def stabilizer_sites(self):
        """Centre sites carrying a stabilizer: 2..L-1 open, all sites periodic."""
        if self.is_open:
            return range(2, self.length)
        return range(1, self.length + 1)

    def bonds(self):
        """Nearest-neighbour bonds (i, i+1), plus the wrap bond when periodic."""
        out = [(i, i + 1) for i in range(1, self.length)]
        if self.is_periodic:
            out.append((self.length, 1))
        return out

    def supports_global_symmetry(self) -> bool:
        """Global two-term symmetries need an open chain with L in {9,15,21,...}."""
        return self.is_open and self.length >= 9 and self.length % 6 == 3


def stabilizer(i: int, lattice: LatticeSpec) -> PauliString:
    """Three-site term Z_{i-1} X_i Z_{i+1} centred on site i.

    Open chains omit the boundary sites via the convention that sites 0 and
    L+1 carry no operator, which removes the i=1 and i=L stabilizers.
    """
    L = lattice.length
    if lattice.is_open:
        if not 2 <= i <= L - 1:
            raise DomainError(
                f"open chain has stabilizers only on 2..{L - 1}, got {i}")
        left, right = i - 1, i + 1
    else:
        if not 1 <= i <= L:
            raise DomainError(f"site {i} outside 1..{L}")
        left, right = lattice.site_mod(i - 1), lattice.site_mod(i + 1)
    return PauliString.from_sites(L, {left: "Z", i: "X", right: "Z"})


def cluster_hamiltonian(lattice: LatticeSpec) -> OperatorSum:
    """H = -sum_i Z_{i-1} X_i Z_{i+1}: L-2 terms open, L terms periodic."""
    return OperatorSum.from_terms(
        lattice.length,
        ((-1.0, stabilizer(i, lattice)) for i in lattice.stabilizer_sites()))


def edge_generators(lattice: LatticeSpec) -> list:
    """The four boundary operators commuting with the open Hamiltonian:
    Z_1, Z_L, X_1 Z_2, Z_{L-1} X_L.  They generate the algebra acting inside
    the fourfold ground space."""
    if not lattice.is_open:
        raise DomainError("edge generators exist only on open chains")
    L = lattice.length
    return [
        PauliString.single(L, 1, "Z"),
        PauliString.single(L, L, "Z"),
        PauliString.from_sites(L, {1: "X", 2: "Z"}),
        PauliString.from_sites(L, {L - 1: "Z", L: "X"}),
    ]


def forbidden_set(lattice: LatticeSpec) -> list:
    """All 15 nontrivial products of subsets of the edge generators.

    The generators square to the identity and commute pairwise up to sign, so
    subset products exhaust the generated group up to phase.  Each product is
    canonicalized to its Hermitian representative with a +1 prefix; the list
    is deduplicated by masks and sorted by (weight, letters) for stable
    reports.  Any one of these operators, added to the Hamiltonian, splits the
    ground degeneracy, which is what the global symmetries must rule out.
    """
    gens = edge_generators(lattice)
    L = lattice.length
    seen = {}
    for mask in range(1, 16):
        prod = PauliString.identity(L)
        for b, g in enumerate(gens):
            if mask & (1 << b):
                prod = prod * g
        n_y = (prod.x_mask & prod.z_mask).bit_count()
        canon = PauliString(L, n_y, prod.x_mask, prod.z_mask)
        seen[(canon.x_mask, canon.z_mask)] = canon
    out = sorted(seen.values(), key=lambda p: (p.weight, p.letters))
    return [OperatorSum.from_pauli(p) for p in out]


def local_symmetry_pair(s: int, lattice: LatticeSpec):
    """The two anticommuting edge strings whose sum is a local symmetry."""
    if not lattice.is_open:
        raise DomainError("local symmetries are defined on open chains")
    L = lattice.length
    if L < 4:
        raise DomainError("local symmetry needs at least 4 sites")
    if s == 1:
        a = PauliString.from_sites(L, {1: "X", 2: "Z", L - 1: "Z", L: "Y"})
        b = PauliString.from_sites(L, {1: "Z", L - 1: "Z", L: "Y"})
    elif s == 2:
        a = PauliString.from_sites(L, {L - 1: "Z", L: "Y"})
        b = PauliString.from_sites(L, {1: "Y", 2: "Z", L: "Z"})
    else:
        raise DomainError(f"symmetry index must be 1 or 2, got {s}")
    return a, b


def local_symmetry(s: int, lattice: LatticeSpec) -> OperatorSum:
    """T_s = (A_s + B_s)/sqrt(2) built from edge strings; squares to one."""
    a, b = local_symmetry_pair(s, lattice)
    return (OperatorSum.from_pauli(a) + OperatorSum.from_pauli(b)) / _SQRT2


# Conjugated-basis patterns of the global symmetry halves for L = 6m + 3.
# Blocks of four X followed by two identities sweep the bulk; small edge
# decorations close the strings.  These patterns commute with the conjugated
# Hamiltonian (a sum of single X letters on bulk sites) by construction.
def _tau_patterns(L: int) -> dict:
    m = (L - 3) // 6
    return {
        "A1": "XXXXII" * m + "XXY",
        "B1": "ZIXXXX" + "IIXXXX" * (m - 1) + "IIY",
        "A2": "IXXXXI" * m + "IXY",
        "B2": "YIIXXX" + "XIIXXX" * (m - 1) + "XIZ",
    }


# Literal printed products for the same four operators in the working basis,
# as six-site blocks plus a three-site tail.  A1 and B1 reproduce the
# canonical forms exactly; A2 matches up to sign; the printed B2 does not
# match (see cross_check_global), which is why the canonical patterns above
# are the source of truth.
_PRINTED_BLOCKS = {
    "A1": ("YXXYZZ", "YXX"),
    "B1": ("ZZYXXY", "ZZY"),
    "A2": ("ZYXXYZ", "ZYX"),
    "B2": ("YZXYXX", "YZZ"),
}


def _require_global(lattice: LatticeSpec):
    if not lattice.supports_global_symmetry():
        raise DomainError(
            "global symmetries need an open chain with length in {9,15,21,...} "
            f"(odd multiples of 3), got {lattice.boundary} L={lattice.length}")


def printed_global_string(name: str, lattice: LatticeSpec) -> PauliString:
    """The literal printed product for A1, B1, A2 or B2."""
    _require_global(lattice)
    block, tail = _PRINTED_BLOCKS[name]
    m = (lattice.length - 3) // 6
    return PauliString.from_letters(block * m + tail)


def global_symmetry_pair(s: int, lattice: LatticeSpec,
                         construction: str = "tau_canonical"):
    """The halves (A_s, B_s) of a global symmetry, as PauliStrings.

    tau_canonical: conjugate the canonical block patterns back into the
    working basis (source of truth).  sigma_printed: the literal printed
    products, kept for cross-checking only.
    """
    _require_global(lattice)
    if s not in (1, 2):
        raise DomainError(f"symmetry index must be 1 or 2, got {s}")
    if construction == "tau_canonical":
        pats = _tau_patterns(lattice.length)
        a = conjugate_ucp(PauliString.from_letters(pats[f"A{s}"]), lattice)
        b = conjugate_ucp(PauliString.from_letters(pats[f"B{s}"]), lattice)
        return a, b
    if construction == "sigma_printed":
        return (printed_global_string(f"A{s}", lattice),
                printed_global_string(f"B{s}", lattice))
    raise DomainError(f"unknown construction {construction!r}")


def global_symmetry(s: int, lattice: LatticeSpec,
                    construction: str = "tau_canonical") -> OperatorSum:
    """T_s = (A_s + B_s)/sqrt(2).

    The 1/sqrt(2) makes T_s square to the identity given A^2 = B^2 = 1 and
    {A, B} = 0; both the normalized and raw forms appear in reports.
    """
    a, b = global_symmetry_pair(s, lattice, construction)
    return (OperatorSum.from_pauli(a) + OperatorSum.from_pauli(b)) / _SQRT2


def cross_check_global(lattice: LatticeSpec) -> list:
    """Compare each printed product, conjugated by the bond circuit, against
    its canonical block pattern.

    Returns one entry per operator: whether the masks agree, the relative
    phase when they do, and both labels.  Mismatches are reported, never
    corrected.
    """
    _require_global(lattice)
    pats = _tau_patterns(lattice.length)
    entries = []
    for name in ("A1", "B1", "A2", "B2"):
        printed = printed_global_string(name, lattice)
        conjugated = conjugate_ucp(printed, lattice)
        canonical = PauliString.from_letters(pats[name])
        same_masks = (conjugated.x_mask == canonical.x_mask
                      and conjugated.z_mask == canonical.z_mask)
        phase_delta = ((conjugated.phase_exp - canonical.phase_exp) % 4
                       if same_masks else None)
        entries.append({
            "name": name,
            "matches": same_masks and phase_delta in (0, 2),
            "phase_exp_delta": phase_delta,
            "printed": printed.label(),
            "printed_conjugated": conjugated.label(),
            "canonical_pattern": canonical.label(),
        })
    return entries


def ising_perturbation(lattice: LatticeSpec, lam: float) -> OperatorSum:
    """lam * sum over bonds of Y_i Y_{i+1}; empty at lam = 0."""
    if not math.isfinite(lam):
        raise DomainError("coupling must be finite")
    L = lattice.length
    return OperatorSum.from_terms(
        L,
        ((lam, PauliString.from_sites(L, {i: "Y", j: "Y"}))
         for (i, j) in lattice.bonds()))


def perturbed_hamiltonian(lattice: LatticeSpec, lam: float) -> OperatorSum:
    """Cluster Hamiltonian plus the Ising-type perturbation."""
    return cluster_hamiltonian(lattice) + ising_perturbation(lattice, lam)


def parity_and_timereversal(lattice: LatticeSpec):
    """The literal pair (product of Z over all sites, Y Z...Z Y edge string).

    These are the forms stated for the dual convention of the cluster term;
    against the Z X Z convention used here the Z-product anticommutes with
    every cluster term.  See spin_flip_symmetries for the translated pair
    that commutes with this module's Hamiltonian.  Time reversal itself is
    antiunitary and is exposed as the realness check on the Hamiltonian's
    computational-basis matrix, not as an operator.
    """
    L = lattice.length
    parity_z = PauliString.from_letters("Z" * L)
    letters = {1: "Y", L: "Y"}
    letters.update({j: "Z" for j in range(2, L)})
    zy_string = PauliString.from_sites(L, letters)
    return (OperatorSum.from_pauli(parity_z), OperatorSum.from_pauli(zy_string))


def spin_flip_symmetries(lattice: LatticeSpec):
    """The global spin flip (product of X) and the Y X...X Y edge string.

    These are the previous pair translated to the Z X Z convention.  The X
    product commutes with every cluster term and with every Y Y bond, for any
    coupling; the edge string commutes with the cluster terms.
    """
    L = lattice.length
    parity_x = PauliString.from_letters("X" * L)
    letters = {1: "Y", L: "Y"}
    letters.update({j: "X" for j in range(2, L)})
    yx_string = PauliString.from_sites(L, letters)
    return (OperatorSum.from_pauli(parity_x), OperatorSum.from_pauli(yx_string))


@dataclass(frozen=True)
class ModelSpec:
    """A lattice, its Hamiltonian, and a registry of every named operator."""

    lattice: LatticeSpec
    hamiltonian: OperatorSum
    basis_tag: str = "sigma"
    registry: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        if not self.hamiltonian.is_hermitian:
            raise DomainError("model Hamiltonian must be Hermitian")
        for name, op in self.registry.items():
            if op.length != self.lattice.length:
                raise DomainError(f"registry entry {name} has wrong length")


def build_model(lattice: LatticeSpec, lam: float = 0.0) -> ModelSpec:
    """Assemble the full operator registry for a lattice.

    Global symmetries and the forbidden set are included when the lattice
    supports them (open chains; odd multiples of 3 for the global pair).
    """
    reg = {}
    for i in lattice.stabilizer_sites():
        reg[f"S_{i}"] = OperatorSum.from_pauli(stabilizer(i, lattice))
    reg["H_C"] = cluster_hamiltonian(lattice)
    reg["H_I"] = ising_perturbation(lattice, lam)
    parity_z, zy_string = parity_and_timereversal(lattice)
    reg["parity_z"] = parity_z
    reg["string_zy"] = zy_string
    parity_x, yx_string = spin_flip_symmetries(lattice)
    reg["parity_x"] = parity_x
    reg["string_yx"] = yx_string
    if lattice.is_open:
        for k, g in enumerate(edge_generators(lattice), start=1):
            reg[f"G_{k}"] = OperatorSum.from_pauli(g)
        for k, op in enumerate(forbidden_set(lattice), start=1):
            reg[f"Sigma_{k:02d}"] = op
        if lattice.length >= 4:
            reg["T1_loc"] = local_symmetry(1, lattice)
            reg["T2_loc"] = local_symmetry(2, lattice)
    if lattice.supports_global_symmetry():
        for s in (1, 2):
            a, b = global_symmetry_pair(s, lattice)
            reg[f"A{s}"] = OperatorSum.from_pauli(a)
            reg[f"B{s}"] = OperatorSum.from_pauli(b)
            reg[f"T{s}"] = global_symmetry(s, lattice)
    return ModelSpec(
        lattice=lattice,
        hamiltonian=reg["H_C"] + reg["H_I"],
        basis_tag="sigma",
        registry=MappingProxyType(reg),
    )


def registry_manifest(model: ModelSpec) -> str:
    """Deterministic text manifest of the registry, for golden-file tests."""
    lines = [f"# L={model.lattice.length} boundary={model.lattice.boundary} "
             f"basis={model.basis_tag}"]
    for name in sorted(model.registry):
        op = model.registry[name]
        if op.is_zero:
            lines.append(f"{name}: 0")
            continue
        terms = op.manifest_lines()
        lines.append(f"{name}: " + " | ".join(terms))
    return "\n".join(lines) + "\n"
