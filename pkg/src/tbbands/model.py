"""Hamiltonian and translation operators for the periodic square lattice.

All matrices are dense complex numpy arrays. At desk scale (n <= ~40, so
dimension <= 1600) dense storage is cheap, and the downstream eigenbases are
dense complex anyway, so one container type serves everything.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Dense complex beyond this dimension is multi-GiB; refuse early.
MAX_DENSE_DIM = 8192


@dataclass(frozen=True)
class LatticeSpec:
    """Problem parameters: n sites per dimension, on-site energy alpha, hopping t.

    The Hamiltonian acts on the n*n sites of the periodic lattice. n >= 3 is
    required: for n = 2 the left and right neighbour of a site coincide and the
    nearest-neighbour coupling pattern would double up, and n = 1 self-couples.
    """

    n: int
    alpha: float
    t: float

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(
                f"n must be >= 3 (got {self.n}); below that the cyclic "
                "neighbours coincide and the four-neighbour pattern breaks"
            )
        if not (math.isfinite(self.alpha) and math.isfinite(self.t)):
            raise ValueError("alpha and t must be finite reals")

    @property
    def dim(self) -> int:
        return self.n * self.n


def build_shift(n: int) -> np.ndarray:
    """n x n cyclic shift permutation, first row (0, ..., 0, 1).

    Maps basis vector e_j to e_{(j+1) mod n}; orthogonal, so its transpose is
    its inverse.
    """
    if n < 1:
        raise ValueError(f"shift size must be >= 1 (got {n})")
    shift = np.zeros((n, n), dtype=complex)
    shift[np.arange(n), (np.arange(n) - 1) % n] = 1.0
    return shift


def build_chain(spec: LatticeSpec) -> np.ndarray:
    """One-dimensional ring Hamiltonian: alpha on the diagonal, -t to both cyclic neighbours."""
    shift = build_shift(spec.n)
    return spec.alpha * np.eye(spec.n, dtype=complex) - spec.t * (shift + shift.T)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with a guard against absurd dense allocations."""
    out_dim = a.shape[0] * b.shape[0]
    if out_dim > MAX_DENSE_DIM:
        raise ValueError(
            f"kron result dimension {out_dim} exceeds the dense cap {MAX_DENSE_DIM}"
        )
    return np.kron(a, b)


def build_hamiltonian(spec: LatticeSpec) -> np.ndarray:
    """Block-circulant lattice Hamiltonian on the n^2 sites.

    Assembled as I (x) C + (P + P^T) (x) (-t I) with C the ring Hamiltonian and
    P the cyclic shift. Site index j decomposes as j = p*n + q with p the block
    (outer) index and q the in-block index. The two Kronecker terms touch
    disjoint entries, so every entry is exactly alpha or -t: H is exactly real
    symmetric with four off-diagonal couplings per row.
    """
    eye = np.eye(spec.n, dtype=complex)
    shift = build_shift(spec.n)
    return kron(eye, build_chain(spec)) + kron(shift + shift.T, -spec.t * eye)


def build_symmetries(spec: LatticeSpec) -> tuple[np.ndarray, np.ndarray]:
    """Translation permutations of the lattice: (in-block direction, block direction)."""
    eye = np.eye(spec.n, dtype=complex)
    shift = build_shift(spec.n)
    return kron(eye, shift), kron(shift, eye)


@dataclass(frozen=True, eq=False)
class CommutingFamily:
    """The Hamiltonian bundled with the two translation operators it commutes with."""

    h: np.ndarray
    sx: np.ndarray
    sy: np.ndarray

    @property
    def dim(self) -> int:
        return self.h.shape[0]

    @property
    def n(self) -> int:
        return math.isqrt(self.dim)


def build_family(spec: LatticeSpec) -> CommutingFamily:
    """Construct H, S_x, S_y and assert the pairwise commutators vanish exactly.

    The products involve only multiplications by 0 and 1 and additions of
    zeros, so the commutators are exact in floating point; any nonzero entry is
    a construction bug, not a numerical artifact.
    """
    h = build_hamiltonian(spec)
    sx, sy = build_symmetries(spec)
    for name, a, b in (("[h, sx]", h, sx), ("[h, sy]", h, sy), ("[sx, sy]", sx, sy)):
        defect = np.abs(a @ b - b @ a).max()
        if defect != 0.0:
            raise AssertionError(
                f"construction bug: commutator {name} has max entry {defect!r}"
            )
    for m in (h, sx, sy):
        m.setflags(write=False)
    return CommutingFamily(h=h, sx=sx, sy=sy)
