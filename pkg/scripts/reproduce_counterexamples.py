#!/usr/bin/env python3
"""Reproduce the two disconnected varieties: strata, certificates and pi_0.

Usage: python3 scripts/reproduce_counterexamples.py [--primes 3 5]
"""

import argparse

from kisin.connectivity import build_graph, pi0_report
from kisin.core import ExtAffine, GroupShape
from kisin.normal_form import make_datum


def show(title, datum, mu):
    graph = build_graph(datum, mu)
    rep = pi0_report(graph)
    print(f"== {title}")
    print(f"   tau = {datum.tau}, w = {datum.w}, mu = {mu}")
    print(f"   fixed point e = {tuple(tuple(str(x) for x in b) for b in datum.e)}")
    for s in graph.vertices:
        print(
            f"   stratum lam={s.lam}  nat={s.nat}  dim={s.dim if s.dim is not None else '?'}"
            f"  singleton={s.singleton} ({s.singleton_rule})"
        )
    print(f"   edges: {len(graph.edges)}, pi0: {rep.upper_bound} ({rep.exactness})")
    print()


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes", type=int, nargs="+", default=[3, 5])
    args = ap.parse_args()
    for p in args.primes:
        da = make_datum(
            GroupShape.res_field(4, 1, p), ExtAffine(((2, 0, 2, 0),), ((1, 3, 0, 2),))
        )
        show(f"GL4 twisted by u^(2,0,2,0)(1 2 4 3), p={p}", da, ((2 * p - 1, p, p, 1),))
        db = make_datum(
            GroupShape.res_field(3, 2, p),
            ExtAffine(((2, 0, 1), (0, 0, 1)), ((1, 2, 0), (0, 1, 2))),
        )
        show(f"Res GL3, f=2, p={p}", db, ((p + 1, 0, 0), (p, p, 0)))


if __name__ == "__main__":
    main()
