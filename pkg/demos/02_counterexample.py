"""Why does cd2 break the positive invariant "there is a driver"?

The solver returns an object model that belongs to cd2 yet contains no
driver.  ``minimize=True`` asks for one with as few objects as possible.
"""

from modcheck import check_mod, corpus_path, parse_cd, parse_mod, print_object_model
from modcheck.frontend import bind_pattern
from modcheck.semantics import embeds, is_member

cd2 = parse_cd(corpus_path("cd2.cd").read_text())
(mod21,) = parse_mod(corpus_path("ms2", "mod2.1.od").read_text())

for minimize in (False, True):
    (verdict,) = check_mod(cd2, mod21, 8, minimize=minimize)
    cex = verdict.counterexample
    print(f"minimize={minimize}: {verdict.result.value}, {len(cex)} objects")
    print(print_object_model(cex, cd2, "mod2_1_cex", "a member of cd2 without any driver"))
    # the guarantees behind the verdict, re-checked directly
    assert is_member(cex, cd2).holds
    assert embeds(bind_pattern(mod21, cd2), cex) is None
