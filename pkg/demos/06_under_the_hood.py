"""From diagrams to clauses: the intermediate forms behind one check."""

from modcheck import corpus_path, parse_cd, parse_mod
from modcheck.compiler import (
    compile_cd,
    compile_pattern_predicate,
    dump_command,
    dump_module,
    dump_predicate,
    make_command,
)
from modcheck.solver import bounds_for, export_dimacs, ground, solve

cd2 = parse_cd(corpus_path("cd2.cd").read_text())
(mod22,) = parse_mod(corpus_path("ms2", "mod2.2.od").read_text())

module = compile_cd(cd2)
pred = compile_pattern_predicate(mod22, cd2)
cmd = make_command(mod22, cd2, 3)
print(dump_module(module))
print(dump_predicate(pred))
print(dump_command(cmd) + "\n")

problem = ground(module, pred, cmd, bounds_for(module, cmd))
outcome = solve(problem)
print(f"{problem.variable_count} variables, {len(problem.clauses)} clauses -> {outcome.status}")
print(f"search: {outcome.stats['decisions']} decisions, {outcome.stats['conflicts']} conflicts\n")

print("DIMACS head:")
print("\n".join(export_dimacs(problem).splitlines()[:12]))
