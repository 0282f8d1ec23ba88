"""End-to-end pipeline: dispersion relation, spectrum, and oracle comparison."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .analytic import MomentumIndex, analytic_eigenvalue
from .eigen import eig_hermitian
from .model import CommutingFamily, LatticeSpec, build_family, build_hamiltonian
from .simdiag import (
    SymBasis,
    VerificationReport,
    simultaneous_basis_combination,
    simultaneous_basis_refine,
    verify_basis,
)

METHODS = ("refine", "combination")


@dataclass(frozen=True, eq=False)
class BandData:
    """Numerical dispersion relation: one row per momentum index, lexicographic in (r, s)."""

    n: int
    alpha: float
    t: float
    r: np.ndarray
    s: np.ndarray
    kx: np.ndarray
    ky: np.ndarray
    energy: np.ndarray

    @property
    def rows(self) -> Iterator[tuple[int, int, float, float, float]]:
        for j in range(self.r.shape[0]):
            yield (
                int(self.r[j]),
                int(self.s[j]),
                float(self.kx[j]),
                float(self.ky[j]),
                float(self.energy[j]),
            )


@dataclass(frozen=True, eq=False)
class SpectrumData:
    """Eigenvalues of the Hamiltonian, ascending."""

    values: np.ndarray


def band_from_energies(
    spec: LatticeSpec, labels: list[MomentumIndex], energies: np.ndarray
) -> BandData:
    """Assemble a BandData table from labelled energies (sorted by label)."""
    order = sorted(range(len(labels)), key=lambda j: labels[j])
    r = np.array([labels[j].r for j in order], dtype=int)
    s = np.array([labels[j].s for j in order], dtype=int)
    return BandData(
        n=spec.n,
        alpha=spec.alpha,
        t=spec.t,
        r=r,
        s=s,
        kx=2.0 * math.pi * r / spec.n,
        ky=2.0 * math.pi * s / spec.n,
        energy=np.asarray(energies, dtype=float)[order],
    )


def compute_basis(
    spec: LatticeSpec,
    method: str = "refine",
    gap_tol: float | None = None,
    filter_tol: float | None = None,
) -> tuple[CommutingFamily, SymBasis]:
    """Build the operator family and solve for its simultaneous eigenbasis."""
    family = build_family(spec)
    if method == "refine":
        basis = simultaneous_basis_refine(family, gap_tol)
    elif method == "combination":
        basis = simultaneous_basis_combination(family, gap_tol, filter_tol)
    else:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    return family, basis


def compute_dispersion(
    spec: LatticeSpec,
    method: str = "refine",
    gap_tol: float | None = None,
    filter_tol: float | None = None,
) -> tuple[BandData, VerificationReport]:
    """Numerical dispersion relation plus the verification report of its basis.

    Energies are the Rayleigh quotients of the computed basis, not closed-form
    substitutions, so comparing them against the analytic values measures real
    solver error.
    """
    family, basis = compute_basis(spec, method, gap_tol, filter_tol)
    band = band_from_energies(spec, basis.labels, basis.energies)
    return band, verify_basis(basis, family, spec)


def compute_spectrum(spec: LatticeSpec) -> SpectrumData:
    """Sorted eigenvalues of the Hamiltonian (no momentum labels needed)."""
    return SpectrumData(values=eig_hermitian(build_hamiltonian(spec)).values)


def analytic_dispersion(spec: LatticeSpec) -> BandData:
    """Closed-form dispersion table in the same layout as :func:`compute_dispersion`."""
    labels = [MomentumIndex(r, s) for r in range(spec.n) for s in range(spec.n)]
    energies = np.array([analytic_eigenvalue(spec, lab) for lab in labels])
    return band_from_energies(spec, labels, energies)


def compare_to_analytic(band: BandData, spec: LatticeSpec) -> np.ndarray:
    """n x n grid of absolute energy errors against the closed-form values.

    Entry [r, s] is |energy(r, s) - analytic(r, s)|, the layout used for
    error-surface exports.
    """
    if band.r.shape[0] != spec.dim:
        raise ValueError(f"band has {band.r.shape[0]} rows, expected {spec.dim}")
    grid = np.zeros((spec.n, spec.n))
    for r, s, _kx, _ky, energy in band.rows:
        grid[r, s] = abs(energy - analytic_eigenvalue(spec, MomentumIndex(r, s)))
    return grid
