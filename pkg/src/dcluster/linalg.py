"""Exact linear algebra over the prime field F_p, on numpy int64 arrays.

Everything in the package that looks like numerical linear algebra goes
through this module, so all ranks, kernels and solves are exact.  Matrices
are ordinary numpy arrays with dtype int64 and entries reduced into
[0, p); p is a parameter everywhere (default prime lives in config, not
here).  Zero-sized matrices are legal and common (empty representations).
"""

from __future__ import annotations

from typing import List, Optional, Tuple

import numpy as np


def mod_p(a: np.ndarray, p: int) -> np.ndarray:
    """Reduce an integer array into [0, p)."""
    return np.asarray(a, dtype=np.int64) % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mmul(p: int, *mats: np.ndarray) -> np.ndarray:
    """Product of matrices mod p, left to right."""
    out = np.asarray(mats[0], dtype=np.int64) % p
    for m in mats[1:]:
        out = (out @ (np.asarray(m, dtype=np.int64) % p)) % p
    return out


def inv_scalar(a: int, p: int) -> int:
    """Inverse of a nonzero scalar mod p (p prime)."""
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError("inverse of 0 mod %d" % p)
    return pow(a, p - 2, p)


def rref_mod(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Row-reduced echelon form mod p; returns (R, pivot column list)."""
    r = mod_p(np.array(a, dtype=np.int64, copy=True), p)
    rows, cols = r.shape
    piv: List[int] = []
    h = 0
    for j in range(cols):
        if h >= rows:
            break
        nz = np.nonzero(r[h:, j])[0]
        if nz.size == 0:
            continue
        i = h + int(nz[0])
        if i != h:
            r[[h, i]] = r[[i, h]]
        r[h] = (r[h] * inv_scalar(int(r[h, j]), p)) % p
        col = r[:, j].copy()
        col[h] = 0
        r = (r - np.outer(col, r[h])) % p
        piv.append(j)
        h += 1
    return r, piv


def rank_mod(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref_mod(a, p)[1])


def nullspace_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel of a, as the columns of the result."""
    a = np.asarray(a, dtype=np.int64)
    rows, cols = a.shape
    r, piv = rref_mod(a, p)
    free = [j for j in range(cols) if j not in piv]
    basis = zeros(cols, len(free))
    for k, j in enumerate(free):
        basis[j, k] = 1
        for i, pj in enumerate(piv):
            basis[pj, k] = (-int(r[i, j])) % p
    return basis


def solve_mod(a: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """A particular solution x of a @ x = b mod p, or None if inconsistent.

    b may be a vector or a matrix (solved column by column).
    """
    a = mod_p(np.asarray(a, dtype=np.int64), p)
    b = mod_p(np.asarray(b, dtype=np.int64), p)
    vec = b.ndim == 1
    b2 = b.reshape(-1, 1) if vec else b
    m, n = a.shape
    aug = np.concatenate([a, b2], axis=1)
    r, piv = rref_mod(aug, p)
    if any(j >= n for j in piv):
        return None
    x = zeros(n, b2.shape[1])
    for i, j in enumerate(piv):
        x[j] = r[i, n:]
    return x[:, 0] if vec else x


def inv_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix mod p (raises if singular)."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inv_mod needs a square matrix")
    r, piv = rref_mod(np.concatenate([a, eye(n)], axis=1), p)
    if len(piv) < n or piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular mod %d" % p)
    return r[:, n:]


def in_span(span: np.ndarray, v: np.ndarray, p: int) -> bool:
    """Is the vector v in the column span of `span` mod p?"""
    return solve_mod(span, v, p) is not None


def cokernel_mod(a: np.ndarray, p: int) -> Tuple[np.ndarray, np.ndarray]:
    """Cokernel of a: k^n -> k^m as a pair (proj, sec).

    proj is a (m-rank) x m matrix with kernel exactly the column span of a,
    and sec is an m x (m-rank) section with proj @ sec = identity.  proj
    realizes the quotient k^m / im(a) in the coordinates of the standard
    basis vectors chosen by sec.
    """
    a = np.asarray(a, dtype=np.int64)
    m = a.shape[0]
    _, piv = rref_mod(a, p)
    cspan = a[:, piv]
    r = len(piv)
    aug = np.concatenate([mod_p(cspan, p), eye(m)], axis=1)
    _, piv2 = rref_mod(aug, p)
    sel = [j - r for j in piv2 if j >= r]
    basis = np.concatenate([mod_p(cspan, p), eye(m)[:, sel]], axis=1)
    binv = inv_mod(basis, p)
    proj = binv[r:, :]
    sec = eye(m)[:, sel]
    return proj, sec
