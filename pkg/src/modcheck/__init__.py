"""Bounded verification of class diagrams against modal object diagrams."""

from .compiler import (
    Command,
    ConstraintModule,
    PatternPredicate,
    compile_cd,
    compile_example_predicate,
    compile_pattern_predicate,
    compute_example_scopes,
    make_command,
)
from .corpus import corpus_path
from .frontend import ParseError, parse_cd, parse_mod, print_cd, print_mod, print_object_model
from .model import (
    ClassDiagram,
    Domains,
    ModalObjectDiagram,
    Modality,
    ModelError,
    ObjectModel,
    Specification,
)
from .semantics import Embedding, MembershipResult, embeds, enumerate_models, is_member, per_class_size
from .verifier import Backend, Result, Verdict, VerificationReport, check_mod, expand_parameters, verify_spec

__all__ = [
    "Backend", "ClassDiagram", "Command", "ConstraintModule", "Domains", "Embedding", "MembershipResult",
    "ModalObjectDiagram", "Modality", "ModelError", "ObjectModel", "ParseError", "PatternPredicate",
    "Result", "Specification", "Verdict", "VerificationReport", "check_mod", "compile_cd",
    "compile_example_predicate", "compile_pattern_predicate", "compute_example_scopes", "corpus_path",
    "embeds", "enumerate_models", "expand_parameters", "is_member", "make_command", "parse_cd", "parse_mod",
    "per_class_size", "print_cd", "print_mod", "print_object_model", "verify_spec",
]
