"""Exact linear algebra kernels.

Everything downstream reduces to computations in finitely generated abelian
groups presented as Z/m_1 x ... x Z/m_D.  Three arithmetic lanes:

* all moduli equal to one prime p  -> dense mod-p elimination (numpy),
* general moduli                   -> integer Smith/Hermite normal forms,
* moduli all zero                  -> exact rational elimination (Fraction).

Matrices are lists of rows; "columns" arguments are lists of coordinate
vectors.  All integer results are reduced into [0, m_i) coordinatewise.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _uniform_prime(moduli):
    """The prime p if all moduli equal p, else None."""
    ms = set(moduli)
    if len(ms) == 1:
        (m,) = ms
        if is_prime(m):
            return m
    return None


# ---------------------------------------------------------------------------
# mod-p lane (numpy)
# ---------------------------------------------------------------------------

def modp_rref(A, p):
    """Row-reduce A mod p.  Returns (R, pivot_columns)."""
    R = np.array(A, dtype=np.int64).reshape(len(A), -1) % p
    nr, nc = R.shape
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.nonzero(R[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = (R[r] * pow(int(R[r, c]), p - 2, p)) % p
        factors = R[:, c].copy()
        factors[r] = 0
        R = (R - np.outer(factors, R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def modp_rank(A, p):
    if len(A) == 0 or len(A[0]) == 0:
        return 0
    return len(modp_rref(A, p)[1])


def modp_kernel(A, p):
    """Columns spanning {x : A x = 0 mod p}."""
    nr = len(A)
    nc = len(A[0]) if nr else 0
    if nc == 0:
        return []
    if nr == 0:
        return [[1 if i == j else 0 for i in range(nc)] for j in range(nc)]
    R, pivots = modp_rref(A, p)
    free = [c for c in range(nc) if c not in pivots]
    out = []
    for f in free:
        v = [0] * nc
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = int(-R[r, f]) % p
        out.append(v)
    return out


def modp_solve(A, b, p):
    """One solution of A x = b mod p, or None."""
    nr = len(A)
    nc = len(A[0]) if nr else 0
    aug = [list(A[i]) + [b[i]] for i in range(nr)]
    R, pivots = modp_rref(aug, p)
    if nc in pivots:
        return None
    x = [0] * nc
    for r, c in enumerate(pivots):
        x[c] = int(R[r, nc]) % p
    return x


# ---------------------------------------------------------------------------
# rational lane (Fraction)
# ---------------------------------------------------------------------------

def frac_rref(A):
    R = [[Fraction(x) for x in row] for row in A]
    nr = len(R)
    nc = len(R[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        pr = next((i for i in range(r, nr) if R[i][c] != 0), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(nr):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def frac_kernel(A):
    nr = len(A)
    nc = len(A[0]) if nr else 0
    if nc == 0:
        return []
    if nr == 0:
        return [[Fraction(int(i == j)) for i in range(nc)] for j in range(nc)]
    R, pivots = frac_rref(A)
    free = [c for c in range(nc) if c not in pivots]
    out = []
    for f in free:
        v = [Fraction(0)] * nc
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -R[r][f]
        out.append(v)
    return out


def frac_solve(A, b):
    nr = len(A)
    nc = len(A[0]) if nr else 0
    aug = [list(A[i]) + [b[i]] for i in range(nr)]
    R, pivots = frac_rref(aug)
    if nc in pivots:
        return None
    x = [Fraction(0)] * nc
    for r, c in enumerate(pivots):
        x[c] = R[r][nc]
    return x


# ---------------------------------------------------------------------------
# integer lane: Smith and Hermite normal forms
# ---------------------------------------------------------------------------

def smith_normal_form(A, want_uinv=False):
    """Diagonalize A over Z.

    Returns (diag, U, V, Uinv) with U A V diagonal (nonnegative entries,
    no divisibility chain enforced).  Uinv is None unless requested.
    """
    nr = len(A)
    nc = len(A[0]) if nr else 0
    S = [list(map(int, row)) for row in A]
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    V = [[int(i == j) for j in range(nc)] for i in range(nc)]
    Ui = [[int(i == j) for j in range(nr)] for i in range(nr)] if want_uinv else None

    def row_sub(i, k, q):  # row_i -= q*row_k ; Uinv: col_k += q*col_i
        S[i] = [a - q * b for a, b in zip(S[i], S[k])]
        U[i] = [a - q * b for a, b in zip(U[i], U[k])]
        if Ui is not None:
            for r in range(nr):
                Ui[r][k] += q * Ui[r][i]

    def col_sub(j, k, q):  # col_j -= q*col_k
        for r in range(nr):
            S[r][j] -= q * S[r][k]
        for r in range(nc):
            V[r][j] -= q * V[r][k]

    def row_swap(i, k):
        S[i], S[k] = S[k], S[i]
        U[i], U[k] = U[k], U[i]
        if Ui is not None:
            for r in range(nr):
                Ui[r][i], Ui[r][k] = Ui[r][k], Ui[r][i]

    def col_swap(j, k):
        for r in range(nr):
            S[r][j], S[r][k] = S[r][k], S[r][j]
        for r in range(nc):
            V[r][j], V[r][k] = V[r][k], V[r][j]

    def row_neg(i):
        S[i] = [-a for a in S[i]]
        U[i] = [-a for a in U[i]]
        if Ui is not None:
            for r in range(nr):
                Ui[r][i] = -Ui[r][i]

    t = 0
    while t < min(nr, nc):
        # locate a minimal nonzero entry in the trailing block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if S[i][j] != 0 and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        if i != t:
            row_swap(i, t)
        if j != t:
            col_swap(j, t)
        if S[t][t] < 0:
            row_neg(t)
        dirty = False
        for i in range(t + 1, nr):
            if S[i][t] != 0:
                q = S[i][t] // S[t][t]
                row_sub(i, t, q)
                if S[i][t] != 0:
                    dirty = True
        for j in range(t + 1, nc):
            if S[t][j] != 0:
                q = S[t][j] // S[t][t]
                col_sub(j, t, q)
                if S[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        t += 1

    diag = [S[i][i] for i in range(min(nr, nc))]
    return diag, U, V, Ui


def hnf_columns(cols, dim):
    """Canonical column Hermite form of the lattice spanned by cols in Z^dim.

    Returns a tuple of pivot columns (each a tuple), in echelon order with
    positive pivots and reduced off-pivot entries; usable as a canonical key.
    """
    work = [list(map(int, c)) for c in cols if any(c)]
    fixed = []  # (pivot_row, column)
    for row in range(dim):
        live = [c for c in work if c[row] != 0]
        rest = [c for c in work if c[row] == 0 and any(c)]
        if not live:
            work = rest
            continue
        # gcd all live columns into one via euclid
        while len(live) > 1:
            live.sort(key=lambda c: abs(c[row]))
            a = live[0]
            new_live = [a]
            for b in live[1:]:
                q = b[row] // a[row]
                nb = [x - q * y for x, y in zip(b, a)]
                if nb[row] != 0:
                    new_live.append(nb)
                elif any(nb):
                    rest.append(nb)
            live = new_live
        piv = live[0]
        if piv[row] < 0:
            piv = [-x for x in piv]
        fixed.append((row, piv))
        work = rest
    # final reduction: entries of each pivot column at later pivot rows mod pivot
    fixed.sort(key=lambda t: t[0])
    for idx, (prow, pcol) in enumerate(fixed):
        for jdx in range(idx):
            qrow, qcol = fixed[jdx]
            if qcol[prow] != 0:
                q = qcol[prow] // pcol[prow]
                fixed[jdx] = (qrow, [x - q * y for x, y in zip(qcol, pcol)])
    return tuple((prow, tuple(col)) for prow, col in fixed)


def lattice_membership(hnf, v):
    """Is v in the lattice with canonical basis hnf (from hnf_columns)?"""
    v = list(map(int, v))
    for prow, col in hnf:
        if v[prow] % col[prow] != 0:
            return False
        q = v[prow] // col[prow]
        v = [a - q * b for a, b in zip(v, col)]
    return not any(v)


# ---------------------------------------------------------------------------
# abelian-group operations (dispatching on the moduli)
# ---------------------------------------------------------------------------

def _reduce_vec(v, moduli):
    return [x % m if m else x for x, m in zip(v, moduli)]


def _moduli_cols(moduli):
    D = len(moduli)
    out = []
    for i, m in enumerate(moduli):
        if m:
            col = [0] * D
            col[i] = m
            out.append(col)
    return out


def subgroup_basis(cols, moduli):
    """Canonical basis (HNF key) of the subgroup generated by cols in +Z/m_i."""
    p = _uniform_prime(moduli)
    D = len(moduli)
    if p is not None:
        if not cols:
            return tuple()
        R, pivots = modp_rref([list(c) for c in cols], p)  # rows span = row space of gens
        rows = [tuple(int(x) for x in R[r]) for r in range(len(pivots))]
        if not rows:
            return tuple()
        return ("rref", p, tuple(rows))
    return ("hnf", hnf_columns(list(cols) + _moduli_cols(moduli), D))


def subgroup_contains(basis, v, moduli):
    if not basis:
        return not any(_reduce_vec(v, moduli))
    if basis[0] == "rref":
        _, p, rows = basis
        v = [x % p for x in v]
        for row in rows:
            piv = next(i for i, x in enumerate(row) if x)
            if v[piv]:
                f = v[piv]
                v = [(a - f * b) % p for a, b in zip(v, row)]
        return not any(v)
    return lattice_membership(basis[1], v)


def subgroup_size(basis, moduli):
    """Order of the subgroup of +Z/m_i with the given canonical basis."""
    total = 1
    for m in moduli:
        total *= m
    if not basis:
        return 1
    if basis[0] == "rref":
        _, p, rows = basis
        return p ** len(rows)
    # the lattice contains the moduli columns, hence is full rank; its index
    # in Z^D is the product of the HNF pivots
    idx = 1
    for prow, col in basis[1]:
        idx *= col[prow]
    return total // idx


def congruence_kernel(A, row_moduli, col_moduli):
    """Generators of {x in +Z/col_moduli : A x = 0 in +Z/row_moduli}."""
    nr = len(A)
    nc = len(A[0]) if nr else len(col_moduli)
    p = _uniform_prime(list(row_moduli) + list(col_moduli))
    if p is not None:
        ker = modp_kernel(A, p) if nr else [[int(i == j) for i in range(nc)] for j in range(nc)]
        return ker
    # integer path: kernel of [A | diag(row_moduli)] projected to x-part
    if nr == 0:
        gens = [[int(i == j) for i in range(nc)] for j in range(nc)]
    else:
        aug = [list(A[i]) for i in range(nr)]
        extra = []
        for i, m in enumerate(row_moduli):
            if m:
                col = [0] * nr
                col[i] = m
                extra.append(col)
        for col in extra:
            for i in range(nr):
                aug[i].append(col[i])
        diag, U, V, _ = smith_normal_form(aug)
        rank = sum(1 for d in diag if d != 0)
        total = len(aug[0])
        gens = []
        for j in range(total):
            if j >= rank or (j < len(diag) and diag[j] == 0):
                col = [V[r][j] for r in range(total)]
                x = col[:nc]
                if any(x):
                    gens.append(x)
    gens += [[int(i == j) * m for i in range(nc)] for j, m in enumerate(col_moduli) if m]
    gens = [_reduce_vec(g, col_moduli) for g in gens]
    return [g for g in gens if any(g)] or []


def congruence_solve(A, b, row_moduli):
    """One x with A x = b in +Z/row_moduli, or None."""
    nr = len(A)
    nc = len(A[0]) if nr else 0
    if nr == 0:
        return [0] * nc
    p = _uniform_prime(row_moduli)
    if p is not None:
        return modp_solve(A, b, p)
    aug = [list(A[i]) for i in range(nr)]
    width = nc
    for i, m in enumerate(row_moduli):
        if m:
            for r in range(nr):
                aug[r].append(m if r == i else 0)
            width += 1
    diag, U, V, _ = smith_normal_form(aug)
    c = [sum(U[i][k] * b[k] for k in range(nr)) for i in range(nr)]
    xprime = [0] * width
    for i in range(nr):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if i < len(c) and c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            if i < width:
                xprime[i] = c[i] // d
    for i in range(min(nr, len(diag)), nr):
        if c[i] != 0:
            return None
    z = [sum(V[r][k] * xprime[k] for k in range(width)) for r in range(width)]
    return z[:nc]


def quotient_presentation(rel_cols, moduli):
    """Canonical form of (+Z/m_i) / <rel_cols>.

    Returns (qmoduli, proj, lift): qmoduli lists the cyclic orders (> 1),
    proj is a matrix sending ambient coordinates to quotient coordinates,
    lift sends quotient coordinates to ambient representatives.
    """
    D = len(moduli)
    p = _uniform_prime(moduli)
    if p is not None:
        if rel_cols:
            R, pivots = modp_rref([list(c) for c in rel_cols], p)
            rows = [[int(x) for x in R[r]] for r in range(len(pivots))]
            pivset = [next(i for i, x in enumerate(row) if x) for row in rows]
        else:
            rows, pivset = [], []
        free = [i for i in range(D) if i not in pivset]
        qmoduli = [p] * len(free)
        # reducing v by the echelon rows zeroes the pivot coordinates; the
        # surviving free coordinates are v[f] - sum_ep v[ep] * row_ep[f]
        proj = []
        for f in free:
            row = [0] * D
            row[f] = 1
            for er, ep in zip(rows, pivset):
                row[ep] = (-er[f]) % p
            proj.append(row)
        lift = [[int(i == f) for f in free] for i in range(D)]
        return qmoduli, proj, lift
    if D == 0:
        return [], [], []
    cols = [list(c) for c in rel_cols] + _moduli_cols(moduli)
    A = [[cols[j][i] for j in range(len(cols))] for i in range(D)]
    diag, U, V, Ui = smith_normal_form(A, want_uinv=True)
    qmoduli, proj, liftcols = [], [], []
    for i in range(D):
        d = diag[i] if i < len(diag) else 0
        if d == 1:
            continue
        if d == 0:
            # cannot happen when moduli are all nonzero
            d = 0
        qmoduli.append(d)
        proj.append([U[i][k] for k in range(D)])
        liftcols.append([Ui[r][i] for r in range(D)])
    lift = [[liftcols[j][r] for j in range(len(liftcols))] for r in range(D)]
    return qmoduli, proj, lift


def apply_matrix(M, v):
    return [sum(r * x for r, x in zip(row, v)) for row in M]
