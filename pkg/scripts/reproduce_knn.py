"""K_{n,n}: triangle-free, no path-induced P_4, yet the engine certifies a bounded colouring.

Usage: python scripts/reproduce_knn.py [--max-n 8]
"""
import argparse
import time

from pathcert import bounds, tree_dichotomy, verify_certificate
from pathcert.families import brute_force_path_induced, chromatic_number_exact, complete_bipartite
from pathcert.graph import compact_coloring
from pathcert.tree import path_tree


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=8)
    args = ap.parse_args()
    P4 = path_tree(4)
    bound = bounds(2, 3, 3).bound
    print(f"{'n':>3} {'P4 copy':>8} {'kind':>9} {'raw':>4} {'compact':>8} {'chi':>4} {'bound':>6} {'ok':>4} {'sec':>6}")
    for n in range(2, args.max_n + 1):
        G = complete_bipartite(n, n)
        start = time.perf_counter()
        res = tree_dichotomy(G, P4, 3)
        elapsed = time.perf_counter() - start
        col = res.coloring.coloring
        chi, _ = chromatic_number_exact(G)
        ok = bool(verify_certificate(G, res.to_dict()))
        has = brute_force_path_induced(G, P4) is not None
        print(f"{n:>3} {str(has):>8} {res.kind:>9} {col.used:>4} {compact_coloring(G, col).used:>8} "
              f"{chi:>4} {bound:>6} {str(ok):>4} {elapsed:>6.3f}")


if __name__ == "__main__":
    main()
