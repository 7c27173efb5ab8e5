"""Check the bundled class diagrams against the bundled object diagrams.

cd1 is the first draft of a small transport domain; cd2 refines it with
an Employee hierarchy and a singleton Manager.  The refinement breaks two
of the examples the first draft satisfied.
"""

from modcheck import corpus_path, parse_cd, parse_mod, verify_spec


def load(folder, names):
    mods = []
    for n in names:
        mods += parse_mod(corpus_path(folder, f"{n}.od").read_text())
    return mods


cd1 = parse_cd(corpus_path("cd1.cd").read_text())
cd2 = parse_cd(corpus_path("cd2.cd").read_text())
ms1 = load("ms1", [f"mod1.{i}" for i in range(1, 6)])
ms2 = load("ms2", [f"mod2.{i}" for i in range(1, 5)])

for cd, mods, k in [(cd1, ms1, 6), (cd2, ms2, 8), (cd2, ms1, 6)]:
    report = verify_spec(cd, mods, k)
    print(f"{cd.name} against {[m.name for m in mods]} (scope {k})")
    for v in report.verdicts:
        print(f"  {v.mod_name:<8} {v.modality.value:<3} {v.result.value}")
        for violation in v.violations if not v.passed else ():
            print(f"      {violation}")
    print(f"  overall: {report.status.value}\n")
