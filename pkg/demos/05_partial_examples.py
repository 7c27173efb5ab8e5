"""Marking an example partial lets the class diagram complete it.

cd2 rejects mod1.1 and mod1.2 as complete snapshots because they lack the
mandatory Manager.  As partial examples they only have to extend to some
member of cd2, which needs room for the Manager next to the drivers.  The
enumeration backend, a brute-force oracle, agrees with the solver.
"""

from dataclasses import replace

from modcheck import Backend, check_mod, corpus_path, parse_cd, parse_mod

cd2 = parse_cd(corpus_path("cd2.cd").read_text())
for name in ("mod1.1", "mod1.2"):
    (mod,) = parse_mod(corpus_path("ms1", f"{name}.od").read_text())
    (as_is,) = check_mod(cd2, mod)
    print(f"{mod.name} as a complete example: {as_is.result.value}")
    loose = replace(mod, is_partial=True)
    for k in range(0, 4):
        (sat,) = check_mod(cd2, loose, k, Backend.SAT)
        (enum,) = check_mod(cd2, loose, k, Backend.ENUM)
        print(f"  partial, k={k}: sat={sat.result.value} enum={enum.result.value}")
    (v,) = check_mod(cd2, loose, 3)
    print(f"  witness at k=3: {sorted((o.id, o.cls) for o in v.witness.objects.values())}")
