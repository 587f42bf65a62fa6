"""Per-block tables on S^3 and their CSV form."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from ..exactalg.numbers import format_rational
from ..models import Sphere3
from . import linalg
from .eigen import stanton_block
from .harmonics import harmonic_basis
from .kernel import block_kernel_dim

__all__ = ["SpectrumRow", "CSV_COLUMNS", "spectrum_rows", "rows_to_csv"]

CSV_COLUMNS = ("p", "q", "dim", "delta_b_eigenvalue", "kernel_contribution")


@dataclass(frozen=True)
class SpectrumRow:
    p: int
    q: int
    dim: int
    delta_b_eigenvalue: object     # GaussianRational, or None if the block is not scalar
    kernel_contribution: int       # dim_C of ker Gamma inside H^{p,q}

    def as_tuple(self):
        ev = self.delta_b_eigenvalue
        return (self.p, self.q, self.dim, "nonscalar" if ev is None else format_rational(ev.re),
                self.kernel_contribution)


def spectrum_rows(max_degree: int) -> list:
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    rows = []
    for k in range(max_degree + 1):
        for p in range(k, -1, -1):
            q = k - p
            M, _ = stanton_block(p, q)
            ev = linalg.is_scalar_multiple_of_identity(M)
            rows.append(SpectrumRow(p, q, harmonic_basis(p, q).dim, ev, block_kernel_dim(Sphere3(), p, q)))
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow(r.as_tuple())
    return buf.getvalue()
