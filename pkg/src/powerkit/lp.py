"""Exact revised simplex over the rationals.

Solves ``max c.x  s.t.  A x = b, x >= 0`` with :class:`Fraction` arithmetic.
Columns can be appended after a solve (column generation); the next
:meth:`RationalLP.solve` call warm-starts from the current basis.

Pricing is Dantzig's largest-coefficient rule, switching to Bland's
smallest-index rule after a run of degenerate pivots and staying there
until the objective strictly improves, so the method cannot cycle.
``rule="bland"`` forces Bland's rule throughout.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Mapping, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class LPError(RuntimeError):
    pass


class RationalLP:
    def __init__(self, b: Sequence, rule: str = "auto", degenerate_switch: int = 10):
        if rule not in ("auto", "bland"):
            raise ValueError(f"unknown pivot rule {rule!r}")
        self.m = len(b)
        self.sign = [1 if Fraction(v) >= 0 else -1 for v in b]
        self.b = [abs(Fraction(v)) for v in b]
        self.rule = rule
        self.degenerate_switch = degenerate_switch
        self.cols: list[dict[int, Fraction]] = []
        self.cost: list[Fraction] = []
        self.tags: list[Hashable] = []
        self.artificial: list[bool] = []
        self.disabled: set[int] = set()
        for r in range(self.m):
            self._append({r: ONE}, ZERO, ("artificial", r), True)
        self.basis = list(range(self.m))
        self.binv = [[ONE if i == j else ZERO for j in range(self.m)] for i in range(self.m)]
        self.xb = list(self.b)
        self.phase = 1
        self.iterations = 0

    # -- construction -----------------------------------------------------
    def _append(self, col, cost, tag, art=False) -> int:
        self.cols.append(col)
        self.cost.append(cost)
        self.tags.append(tag)
        self.artificial.append(art)
        return len(self.cols) - 1

    def add_column(self, entries: Mapping[int, object] | Sequence, cost, tag: Hashable = None) -> int:
        if isinstance(entries, Mapping):
            items = entries.items()
        else:
            items = enumerate(entries)
        col = {}
        for r, v in items:
            v = Fraction(v)
            if v:
                if not 0 <= r < self.m:
                    raise IndexError(f"row {r} out of range")
                col[r] = v * self.sign[r]
        return self._append(col, Fraction(cost), tag)

    def disable(self, j: int) -> None:
        """Forbid column ``j`` from entering; it must currently be nonbasic."""
        if j in self.basis and self.value(j) != 0:
            raise LPError("cannot disable a basic column with nonzero value")
        self.disabled.add(j)

    # -- linear algebra -------------------------------------------------------
    def _phase_cost(self, j: int) -> Fraction:
        if self.phase == 1:
            return -ONE if self.artificial[j] else ZERO
        return self.cost[j]

    def duals(self) -> list[Fraction]:
        """Simplex multipliers in the caller's row orientation."""
        pi = self._pi()
        return [p * s for p, s in zip(pi, self.sign)]

    def _pi(self) -> list[Fraction]:
        m = self.m
        cb = [self._phase_cost(j) for j in self.basis]
        pi = [ZERO] * m
        for k in range(m):
            if cb[k]:
                row = self.binv[k]
                c = cb[k]
                for r in range(m):
                    if row[r]:
                        pi[r] += c * row[r]
        return pi

    def _ftran(self, col: Mapping[int, Fraction]) -> list[Fraction]:
        out = [ZERO] * self.m
        for r, v in col.items():
            for i in range(self.m):
                a = self.binv[i][r]
                if a:
                    out[i] += a * v
        return out

    def reduced_cost(self, j: int, pi: Sequence[Fraction] | None = None) -> Fraction:
        if pi is None:
            pi = self._pi()
        d = self._phase_cost(j)
        for r, v in self.cols[j].items():
            d -= pi[r] * v
        return d

    def _pivot(self, r: int, e: int, d: list[Fraction]) -> None:
        m = self.m
        piv = d[r]
        row = [v / piv for v in self.binv[r]]
        self.binv[r] = row
        xr = self.xb[r] / piv
        self.xb[r] = xr
        nz = [k for k in range(m) if row[k]]
        for i in range(m):
            if i != r and d[i]:
                f = d[i]
                bi = self.binv[i]
                for k in nz:
                    bi[k] -= f * row[k]
                self.xb[i] -= f * xr
        self.basis[r] = e
        self.iterations += 1

    # -- main loop ----------------------------------------------------------
    def _entering(self, bland: bool) -> int | None:
        pi = self._pi()
        in_basis = set(self.basis)
        best, best_d = None, ZERO
        for j in range(len(self.cols)):
            if j in in_basis or j in self.disabled:
                continue
            if self.artificial[j]:
                continue
            d = self.reduced_cost(j, pi)
            if d > 0:
                if bland:
                    return j
                if d > best_d:
                    best, best_d = j, d
        return best

    def _leaving(self, d: list[Fraction]) -> int | None:
        best_r, best_ratio = None, None
        for i in range(self.m):
            di = d[i]
            if di > 0:
                ratio = self.xb[i] / di
            elif (di and self.phase == 2 and self.artificial[self.basis[i]]
                  and self.xb[i] == 0):
                ratio = ZERO  # push a zero artificial out of the basis
            else:
                continue
            if (best_ratio is None or ratio < best_ratio
                    or (ratio == best_ratio and self.basis[i] < self.basis[best_r])):
                best_r, best_ratio = i, ratio
        return best_r

    def _run(self, max_iter: int) -> str:
        degenerate = 0
        bland = self.rule == "bland"
        for _ in range(max_iter):
            e = self._entering(bland)
            if e is None:
                return "optimal"
            d = self._ftran(self.cols[e])
            r = self._leaving(d)
            if r is None:
                return "unbounded"
            step_zero = self.xb[r] == 0
            self._pivot(r, e, d)
            if self.rule == "auto":
                if step_zero:
                    degenerate += 1
                    if degenerate >= self.degenerate_switch:
                        bland = True
                else:
                    degenerate = 0
                    bland = False
        raise LPError(f"simplex did not finish within {max_iter} pivots")

    def _drive_out_artificials(self) -> None:
        for r in range(self.m):
            if not self.artificial[self.basis[r]]:
                continue
            in_basis = set(self.basis)
            for j in range(len(self.cols)):
                if self.artificial[j] or j in in_basis or j in self.disabled:
                    continue
                d = self._ftran(self.cols[j])
                if d[r]:
                    self._pivot(r, j, d)
                    break

    def solve(self, max_iter: int = 100_000) -> str:
        if self.phase == 1:
            status = self._run(max_iter)
            assert status == "optimal"
            if any(self.xb[i] for i in range(self.m) if self.artificial[self.basis[i]]):
                return "infeasible"
            self.phase = 2
            self._drive_out_artificials()
        return self._run(max_iter)

    # -- results ---------------------------------------------------------------
    def value(self, j: int) -> Fraction:
        for i, bj in enumerate(self.basis):
            if bj == j:
                return self.xb[i]
        return ZERO

    def values(self) -> list[Fraction]:
        out = [ZERO] * len(self.cols)
        for i, bj in enumerate(self.basis):
            out[bj] = self.xb[i]
        return out

    def objective(self) -> Fraction:
        return sum((self.cost[j] * self.xb[i] for i, j in enumerate(self.basis)), ZERO)

    def structural(self) -> list[int]:
        return [j for j in range(len(self.cols)) if not self.artificial[j]]
