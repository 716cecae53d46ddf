"""Independent reference computations used only by the tests.

Nothing here reuses the matrix builders of the package; everything is plain
dense Fraction arithmetic on basis elements.
"""

import itertools
from fractions import Fraction


def dense_rank(rows):
    """Rank by incremental row reduction; each row is reduced against the pivots found so far."""
    pivots = {}
    for r in rows:
        row = {j: Fraction(x) for j, x in enumerate(r) if x}
        while row:
            j = min(row)
            if j not in pivots:
                c = row[j]
                pivots[j] = {k: v / c for k, v in row.items()}
                break
            f = row[j]
            for k, v in pivots[j].items():
                w = row.get(k, 0) - f * v
                if w:
                    row[k] = w
                else:
                    row.pop(k, None)
    return len(pivots)


def sparse_to_dense(M):
    out = [[Fraction(0)] * M.ncols for _ in range(M.nrows)]
    for j, col in enumerate(M.cols):
        for i, x in col.items():
            out[i][j] = x
    return out


# -- algebra on coefficient lists ----------------------------------------------------------


def table(A):
    d = A.dim
    mult = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for ((i, j), (k,)), c in A.mu.items():
        mult[i][j][k] = c
    al = [[Fraction(0)] * d for _ in range(d)]
    for ((j,), (k,)), c in A.alpha.items():
        al[j][k] = c
    return mult, al


def vmul(mult, u, v):
    d = len(u)
    out = [Fraction(0)] * d
    for i in range(d):
        if u[i]:
            for j in range(d):
                if v[j]:
                    for k in range(d):
                        out[k] += u[i] * v[j] * mult[i][j][k]
    return out


def vlin(mat, u):
    d = len(u)
    out = [Fraction(0)] * d
    for j in range(d):
        if u[j]:
            for k in range(d):
                out[k] += u[j] * mat[j][k]
    return out


def vpow(mat, u, p):
    for _ in range(p):
        u = vlin(mat, u)
    return u


def basis(d, i):
    v = [Fraction(0)] * d
    v[i] = Fraction(1)
    return v


def evaluate(f, vecs, d):
    """Value of ``f`` (a dict from input tuples to output vectors) on vectors, by multilinearity."""
    out = [Fraction(0)] * d
    supports = [[(i, x) for i, x in enumerate(v) if x] for v in vecs]
    for combo in itertools.product(*supports):
        val = f.get(tuple(i for i, _ in combo))
        if val is None:
            continue
        c = Fraction(1)
        for _, x in combo:
            c *= x
        out = [a + c * b for a, b in zip(out, val)]
    return out


def as_table(m):
    """MultiMap with one output into ``{inputs: output vector}``."""
    d = m.dim
    out = {}
    for (ins, (k,)), c in m.items():
        out.setdefault(ins, [Fraction(0)] * d)[k] += c
    return out


def total_differential_pointwise(A, phi, psi, n):
    """``d(phi, psi)`` evaluated on every basis tuple straight from the defining sums.

    Returns two dicts mapping basis input tuples to output vectors.
    """
    d = A.dim
    mult, al = table(A)
    ph = as_table(phi)
    ps = as_table(psi) if psi is not None else {}
    e = [basis(d, i) for i in range(d)]
    out_mu, out_al = {}, {}
    for xs in itertools.product(range(d), repeat=n + 1):
        x = [e[i] for i in xs]
        val = vmul(mult, vpow(al, x[0], n - 1), evaluate(ph, x[1:], d))
        for i in range(1, n + 1):
            args = [vlin(al, v) for v in x[: i - 1]] + [vmul(mult, x[i - 1], x[i])] + [vlin(al, v) for v in x[i + 1:]]
            s = (-1) ** i
            val = [a + s * b for a, b in zip(val, evaluate(ph, args, d))]
        s = (-1) ** (n + 1)
        val = [a + s * b for a, b in zip(val, vmul(mult, evaluate(ph, x[:n], d), vpow(al, x[n], n - 1)))]
        if n >= 2:
            p = n - 2
            t1 = vmul(mult, vpow(al, vmul(mult, x[0], x[1]), p), evaluate(ps, x[2:], d))
            t2 = vmul(mult, evaluate(ps, x[: n - 1], d), vpow(al, vmul(mult, x[n - 1], x[n]), p))
            val = [a - (b - c) for a, b, c in zip(val, t1, t2)]
        out_mu[xs] = val
    for xs in itertools.product(range(d), repeat=n):
        x = [e[i] for i in xs]
        val = [a - b for a, b in zip(vlin(al, evaluate(ph, x, d)), evaluate(ph, [vlin(al, v) for v in x], d))]
        if n >= 2:
            q = n - 1
            dd = vmul(mult, vpow(al, x[0], q), evaluate(ps, x[1:], d))
            for i in range(1, n):
                args = [vlin(al, v) for v in x[: i - 1]] + [vmul(mult, x[i - 1], x[i])] + [vlin(al, v) for v in x[i + 1:]]
                dd = [a + (-1) ** i * b for a, b in zip(dd, evaluate(ps, args, d))]
            dd = [a + (-1) ** n * b for a, b in zip(dd, vmul(mult, evaluate(ps, x[: n - 1], d), vpow(al, x[n - 1], q)))]
            val = [a - b for a, b in zip(val, dd)]
        out_al[xs] = val
    return out_mu, out_al


def classical_hochschild_dims(A, kmax):
    """``HH^1..HH^kmax`` of an associative algebra from the Hochschild coboundary (HH^1 = derivations).

    Each column is the coboundary of a basis map ``e_ins -> e_o``, evaluated on all
    basis tuples; only terms whose inputs can match ``ins`` are expanded.
    """
    d = A.dim
    mult, _ = table(A)
    prod = {(i, j): {k: c for k, c in enumerate(mult[i][j]) if c} for i in range(d) for j in range(d)}

    def delta_matrix(n):
        rows_idx = {xs: r for r, xs in enumerate(itertools.product(range(d), repeat=n + 1))}
        cols = []
        for ins in itertools.product(range(d), repeat=n):
            for o in range(d):
                col = {}

                def put(xs, vec, sign):
                    base = rows_idx[xs] * d
                    for k, c in vec.items():
                        col[base + k] = col.get(base + k, 0) + sign * c

                for xs in rows_idx:
                    if xs[1:] == ins:
                        put(xs, prod[(xs[0], o)], 1)
                    if xs[:n] == ins:
                        put(xs, prod[(o, xs[n])], (-1) ** (n + 1))
                    for i in range(1, n + 1):
                        if xs[: i - 1] == ins[: i - 1] and xs[i + 1:] == ins[i:]:
                            c = prod[(xs[i - 1], xs[i])].get(ins[i - 1])
                            if c:
                                put(xs, {o: c}, (-1) ** i)
                cols.append(col)
        nrows = len(rows_idx) * d
        rows = [[0] * len(cols) for _ in range(nrows)]
        for j, col in enumerate(cols):
            for i, c in col.items():
                rows[i][j] = c
        return rows

    ranks = {0: 0}
    for n in range(1, kmax + 1):
        ranks[n] = dense_rank(delta_matrix(n))
    return [d ** (n + 1) - ranks[n] - ranks[n - 1] for n in range(1, kmax + 1)]


# -- power series ---------------------------------------------------------------------------


def deformation_defects(D):
    """Orders ``1..N`` at which the t-expanded equations fail, by direct series multiplication."""
    d = D.base.dim
    N = D.order
    tabs = [table_pair(D.mu(i), D.alpha(i), d) for i in range(N + 1)]

    def star(u, v):
        # u, v: lists over orders of vectors; product truncated at t^N
        out = [[Fraction(0)] * d for _ in range(N + 1)]
        for i in range(N + 1):
            for p in range(N + 1 - i):
                for q in range(N + 1 - i - p):
                    w = vmul(tabs[i][0], u[p], v[q])
                    out[i + p + q] = [a + b for a, b in zip(out[i + p + q], w)]
        return out

    def alpha_t(u):
        out = [[Fraction(0)] * d for _ in range(N + 1)]
        for i in range(N + 1):
            for p in range(N + 1 - i):
                w = vlin(tabs[i][1], u[p])
                out[i + p] = [a + b for a, b in zip(out[i + p], w)]
        return out

    def const(v):
        return [v] + [[Fraction(0)] * d for _ in range(N)]

    bad = set()
    e = [const(basis(d, i)) for i in range(d)]
    for a, b, c in itertools.product(range(d), repeat=3):
        lhs = star(alpha_t(e[a]), star(e[b], e[c]))
        rhs = star(star(e[a], e[b]), alpha_t(e[c]))
        for n in range(1, N + 1):
            if lhs[n] != rhs[n]:
                bad.add(n)
    for a, b in itertools.product(range(d), repeat=2):
        lhs = alpha_t(star(e[a], e[b]))
        rhs = star(alpha_t(e[a]), alpha_t(e[b]))
        for n in range(1, N + 1):
            if lhs[n] != rhs[n]:
                bad.add(n)
    return sorted(bad)


def table_pair(mu, alpha, d):
    mult = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for ((i, j), (k,)), c in mu.items():
        mult[i][j][k] = c
    al = [[Fraction(0)] * d for _ in range(d)]
    for ((j,), (k,)), c in alpha.items():
        al[j][k] = c
    return mult, al
