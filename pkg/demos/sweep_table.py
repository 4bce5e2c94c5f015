"""Print status tables for the three code families the package builds."""
import sys

from gdcodes.bounds import COMP21, COMP111
from gdcodes.pipeline import sweep


def show(title, q, d, comp, lengths):
    res = sweep(q, d, comp, lengths)
    print(f"{title}: {res.counts()}")
    for n, c in res.rows:
        size = "-" if c.size is None else c.size
        print(f"  n={n:<4} {c.status.value:<11} {size:<6} {c.recipe}")


if __name__ == "__main__":
    top = int(sys.argv[1]) if len(sys.argv) > 1 else 60
    show("ternary [2,1] d=4", 3, 4, COMP21, range(3, top + 1, 4))
    show("quaternary [1,1,1] d=4", 4, 4, COMP111, range(4, top + 1))
    show("quaternary [1,1,1] d=3", 4, 3, COMP111, [44, 47, 51, 54, 59, 62])
