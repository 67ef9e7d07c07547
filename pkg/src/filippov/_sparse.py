"""Sparse vector helpers (dict index -> scalar, zeros never stored)."""

from __future__ import annotations


def sparse_to_dense(v: dict, size: int, zero) -> list:
    out = [zero] * size
    for i, x in v.items():
        out[i] = x
    return out


def add_scaled(target: dict, coef, src: dict) -> None:
    """``target += coef * src`` on sparse vectors, dropping zeros."""
    if not coef:
        return
    for k, v in src.items():
        nv = target.get(k, 0) + coef * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


def scaled(src: dict, coef) -> dict:
    if not coef:
        return {}
    return {k: coef * v for k, v in src.items()}


def combine(terms) -> dict:
    """Sum of ``coef * vec`` over an iterable of ``(coef, vec)`` pairs."""
    out: dict = {}
    for coef, vec in terms:
        add_scaled(out, coef, vec)
    return out
