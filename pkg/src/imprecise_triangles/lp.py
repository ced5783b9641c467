"""Exact minimax linear programs over a box.

Solves

    minimize t  subject to  t >= b_k + a_k . z   for every form k, t >= 0,
                            0 <= z_i <= u_i,

with rational data, which is the "lowest point of the upper envelope of
planes" problem.  The dual of this program has the feasible origin
``w = 0`` and only ``1 + dim(z)`` rows, so a revised primal simplex on the
dual (with Bland's rule, hence no cycling) is small and exact.  The primal
optimum is read off the dual prices.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class LPError(Exception):
    pass


@dataclass(frozen=True)
class MinimaxSolution:
    t: Fraction
    z: tuple[Fraction, ...]
    active: tuple[int, ...]  # forms with positive dual weight
    pivots: int


class MinimaxLP:
    """Incremental solver; forms may be appended between solves (warm start)."""

    def __init__(self, bounds: Sequence):
        self.u = [Fraction(b) for b in bounds]
        for b in self.u:
            if b < 0:
                raise LPError("negative box bound")
        self.d = len(self.u)
        self.m = 1 + self.d
        self.forms: list[tuple[Fraction, tuple]] = []
        m = self.m
        # column indices: forms first (0..K-1), then box duals, then slacks;
        # basis holds ("f", k) / ("mu", i) / ("s", r) tags
        self.basis: list[tuple] = [("s", r) for r in range(m)]
        self.binv = [[Fraction(int(r == c)) for c in range(m)] for r in range(m)]
        self.xb = [Fraction(1)] + [Fraction(0)] * self.d
        self.pivots = 0

    def add_form(self, const, coeffs: Sequence) -> int:
        if len(coeffs) != self.d:
            raise LPError("coefficient length mismatch")
        self.forms.append((Fraction(const), tuple(Fraction(c) for c in coeffs)))
        return len(self.forms) - 1

    # -- column data
    def _column(self, tag) -> list:
        kind, idx = tag
        m = self.m
        if kind == "f":
            _, a = self.forms[idx]
            return [Fraction(1)] + [-c for c in a]
        col = [Fraction(0)] * m
        if kind == "mu":
            col[1 + idx] = Fraction(-1)
        else:
            col[idx] = Fraction(1)
        return col

    def _cost(self, tag) -> Fraction:
        kind, idx = tag
        if kind == "f":
            return self.forms[idx][0]
        if kind == "mu":
            return -self.u[idx]
        return Fraction(0)

    @staticmethod
    def _order(tag) -> tuple:
        return ({"f": 0, "mu": 1, "s": 2}[tag[0]], tag[1])

    def _prices(self) -> list:
        cb = [self._cost(t) for t in self.basis]
        m = self.m
        return [sum(cb[r] * self.binv[r][c] for r in range(m) if cb[r]) for c in range(m)]

    def _entering(self, pi):
        basic = set(self.basis)
        t, z = pi[0], pi[1:]
        for k, (b, a) in enumerate(self.forms):
            if ("f", k) in basic:
                continue
            # reduced cost > 0  <=>  form k exceeds the current t at z
            if b + sum(ai * zi for ai, zi in zip(a, z) if ai) > t:
                return ("f", k)
        for i in range(self.d):
            if ("mu", i) in basic:
                continue
            if -self.u[i] + pi[1 + i] > 0:
                return ("mu", i)
        for r in range(self.m):
            if ("s", r) in basic:
                continue
            if -pi[r] > 0:
                return ("s", r)
        return None

    def solve(self, max_pivots: int = 1_000_000) -> MinimaxSolution:
        m = self.m
        while True:
            pi = self._prices()
            tag = self._entering(pi)
            if tag is None:
                break
            col = self._column(tag)
            dirn = [sum(self.binv[r][c] * col[c] for c in range(m) if col[c]) for r in range(m)]
            leave = None
            for r in range(m):
                if dirn[r] > 0:
                    ratio = self.xb[r] / dirn[r]
                    key = (ratio, self._order(self.basis[r]))
                    if leave is None or key < leave[0]:
                        leave = (key, r)
            if leave is None:
                raise LPError("dual unbounded: the minimax program is infeasible")
            r = leave[1]
            piv = dirn[r]
            row = [v / piv for v in self.binv[r]]
            xr = self.xb[r] / piv
            for q in range(m):
                if q == r or not dirn[q]:
                    continue
                f = dirn[q]
                bq = self.binv[q]
                self.binv[q] = [bq[c] - f * row[c] for c in range(m)]
                self.xb[q] -= f * xr
            self.binv[r] = row
            self.xb[r] = xr
            self.basis[r] = tag
            self.pivots += 1
            if self.pivots > max_pivots:
                raise LPError("pivot budget exhausted")
        pi = self._prices()
        z = tuple(Fraction(min(max(v, 0), u)) for v, u in zip(pi[1:], self.u))
        active = tuple(
            sorted(idx for (kind, idx), x in zip(self.basis, self.xb) if kind == "f" and x > 0)
        )
        return MinimaxSolution(Fraction(pi[0]), z, active, self.pivots)


def solve_minimax(forms, bounds) -> MinimaxSolution:
    """One-shot helper; ``forms`` is an iterable of ``(const, coeffs)``."""
    lp = MinimaxLP(bounds)
    for const, coeffs in forms:
        lp.add_form(const, coeffs)
    if not lp.forms:
        return MinimaxSolution(Fraction(0), tuple(Fraction(0) for _ in bounds), (), 0)
    return lp.solve()


def max_form(forms, z) -> Fraction:
    return max(Fraction(b) + sum(Fraction(a) * v for a, v in zip(coeffs, z)) for b, coeffs in forms)
