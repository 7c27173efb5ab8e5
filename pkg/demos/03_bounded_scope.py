"""Bounded verification can miss counterexamples that need many objects.

In cda every C1 owns exactly five C2 objects and every C2 belongs to one
C1, so two C1 objects need ten C2 objects.  The negative invariant "no
two C1 objects" therefore holds at every scope below 10.
"""

from modcheck import check_mod, corpus_path, parse_cd, parse_mod
from modcheck.semantics import per_class_size

cda = parse_cd(corpus_path("cda.cd").read_text())
(ni,) = parse_mod(corpus_path("msa", "ni.od").read_text())

for k in range(2, 11):
    (v,) = check_mod(cda, ni, k)
    line = f"k={k:<2} {v.result.value}  decisions={v.stats.get('decisions')}"
    if v.counterexample is not None:
        line += f"  counterexample sizes {per_class_size(v.counterexample, cda)}"
    print(line)
