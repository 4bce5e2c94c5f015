"""Build one code, re-verify it and print how it was made."""
import sys

from gdcodes.bounds import COMP111
from gdcodes.pipeline import build_optimal


def walk(node, depth=0):
    params = " ".join(f"{k}={v}" for k, v in node.params)
    print("  " * depth + f"{node.op} {params}".rstrip())
    for child in node.children:
        walk(child, depth + 1)


if __name__ == "__main__":
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 119
    c = build_optimal(4, n, 4, COMP111)
    print(f"A_4({n},4,[1,1,1]): {c.status.value} {c.size} via {c.recipe} in {c.seconds:.2f}s")
    print(c.report.summary())
    if c.provenance is not None:
        walk(c.provenance)
