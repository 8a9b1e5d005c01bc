"""Shared test helpers: independent oracles kept deliberately separate from the
library's own algorithms."""

from fractions import Fraction
from functools import lru_cache
import itertools


def dominant_vecs(n, lo, hi):
    """All non-increasing integer n-tuples with entries in [lo, hi]."""
    out = []

    def rec(pos, prev, cur):
        if pos == n:
            out.append(tuple(cur))
            return
        for v in range(min(prev, hi), lo - 1, -1):
            cur.append(v)
            rec(pos + 1, v, cur)
            cur.pop()

    rec(0, hi, [])
    return out


def gauss_solve_fixed_point(shape, w, tau):
    """Independent fixed-point oracle: dense Gaussian elimination over Fractions
    on the full (n*N) x (n*N) system (1 - w sigma) x = tau."""
    n, N = shape.n, shape.blocks
    dim = n * N

    def idx(k, i):
        return k * n + i

    m = [[Fraction(0)] * dim for _ in range(dim)]
    rhs = [Fraction(0)] * dim
    for k in range(N):
        winv = [0] * n
        for i, x in enumerate(w[k]):
            winv[x] = i
        for i in range(n):
            r = idx(k, i)
            m[r][r] += 1
            m[r][idx((k + 1) % N, winv[i])] -= shape.eps[k]
            rhs[r] = Fraction(tau[k][i])
    for col in range(dim):
        piv = next(r for r in range(col, dim) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        rhs[col] *= inv
        for r in range(dim):
            if r != col and m[r][col] != 0:
                c = m[r][col]
                m[r] = [a - c * b for a, b in zip(m[r], m[col])]
                rhs[r] -= c * rhs[col]
    return tuple(tuple(rhs[idx(k, i)] for i in range(n)) for k in range(N))


@lru_cache(maxsize=None)
def reachable_by_simple_coroots(src, dst):
    """Independent dominance oracle: breadth-first search from src to dst by
    subtracting simple coroots e_i - e_{i+1}.  Every move preserves the total
    and lowers exactly one prefix sum by 1, so states with any prefix sum
    already below dst's cannot reach it and are pruned."""
    if sum(src) != sum(dst):
        return False
    n = len(src)
    dst_pref = tuple(itertools.accumulate(dst))
    seen = {src}
    frontier = [src]
    while frontier:
        nxt = []
        for v in frontier:
            if v == dst:
                return True
            acc = 0
            for i in range(n - 1):
                acc += v[i]
                if acc - 1 < dst_pref[i]:
                    continue
                w = list(v)
                w[i] -= 1
                w[i + 1] += 1
                w = tuple(w)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return False


def minor_divisors(mat):
    """Independent elementary-divisor oracle via determinantal divisors:
    d_1 + ... + d_k equals the minimal valuation over all k x k minors."""
    from kisin.oracle import LSeries

    n = mat.n
    field = mat.field

    def det(rows_idx, cols_idx):
        if len(rows_idx) == 1:
            return mat.rows[rows_idx[0]][cols_idx[0]]
        acc = LSeries.zero(field)
        for t, c in enumerate(cols_idx):
            minor = det(rows_idx[1:], cols_idx[:t] + cols_idx[t + 1 :])
            term = mat.rows[rows_idx[0]][c].mul(minor)
            acc = acc.add(term.neg() if t % 2 else term)
        return acc

    idx = tuple(range(n))
    prev = 0
    divisors = []
    for k in range(1, n + 1):
        best = None
        for rows in itertools.combinations(idx, k):
            for cols in itertools.combinations(idx, k):
                v = det(rows, cols).known_val()
                if v is not None and (best is None or v < best):
                    best = v
        assert best is not None, "singular matrix in minor oracle"
        divisors.append(best - prev)
        prev = best
    return tuple(sorted(divisors, reverse=True))


def count_stable_submodules(n, B, q):
    """Independent lattice count for a prime field F_q: lattices between
    u^B O^n and u^{-B} O^n correspond to u-stable subspaces of (O/u^{2B})^n;
    enumerate all subspaces by reduced row echelon form and test stability."""
    assert all(q % d for d in range(2, q)), "oracle needs a prime field"
    dim = 2 * B * n

    def u_image(coord):
        i, e = divmod(coord, 2 * B)
        return None if e == 2 * B - 1 else i * 2 * B + e + 1

    def rref(rows):
        rows = [list(r) for r in rows]
        r = 0
        for c in range(dim):
            piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = pow(rows[r][c], -1, q)
            rows[r] = [(inv * x) % q for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [(a - f * b) % q for a, b in zip(rows[i], rows[r])]
            r += 1
        return tuple(tuple(row) for row in rows[:r])

    def span_contains(rows, vec):
        work = list(vec)
        for row in rows:
            c = next(i for i in range(dim) if row[i])
            if work[c]:
                f = work[c]
                work = [(a - f * b) % q for a, b in zip(work, row)]
        return not any(work)

    def u_stable(rows):
        for row in rows:
            img = [0] * dim
            for c, x in enumerate(row):
                if x:
                    t = u_image(c)
                    if t is not None:
                        img[t] = (img[t] + x) % q
            if any(img) and not span_contains(rows, img):
                return False
        return True

    vectors = list(itertools.product(range(q), repeat=dim))[1:]
    all_rrefs = {(): None}
    frontier = [()]
    while frontier:
        nxt = []
        for rows in frontier:
            for vec in vectors:
                if rows and span_contains(rows, vec):
                    continue
                new = rref(rows + (vec,))
                if new not in all_rrefs:
                    all_rrefs[new] = None
                    nxt.append(new)
        frontier = nxt
    return sum(1 for rows in all_rrefs if u_stable(rows))
