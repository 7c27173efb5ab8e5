"""Parametrized object diagrams stand for all their ground copies."""

from modcheck import check_mod, corpus_path, expand_parameters, parse_cd, parse_mod, print_mod
from modcheck.verifier import mod_passes

cd3 = parse_cd(corpus_path("cd3.cd").read_text())
for name in ("mod3.1", "mod3.2", "mod3.3"):
    (mod,) = parse_mod(corpus_path("ms3", f"{name}.od").read_text())
    copies = expand_parameters(mod, cd3)
    verdicts = check_mod(cd3, mod, 6)
    print(f"{mod.name}: {mod.modality.value}, {len(copies)} copies, "
          f"{sum(v.passed for v in verdicts)} pass -> {'PASS' if mod_passes(verdicts) else 'FAIL'}")

print("\nfirst ground copy of mod3.3:\n")
(mod33,) = parse_mod(corpus_path("ms3", "mod3.3.od").read_text())
print(print_mod(expand_parameters(mod33, cd3)[0]))
