"""Exact reasoning engine for graded term inequalities.

Provability degrees of inequalities between terms are computed from graded
assumption sets by a least-fixpoint closure over a bounded term universe;
semantic entailment is approximated from above by enumerating finite
fuzzy-ordered algebras, and equality of the two bounds certifies the exact
degree.  A graded attribute-implication calculus sits on top as an
application layer.
"""

from .errors import (ArityError, AssumptionOutsideUniverseError,
                     BudgetExceededError, DegreeError, GradedIneqError,
                     LatticeMismatchError, MalformedModelError,
                     NoDerivationError, ParseError, PreorderViolationError,
                     QueryOutsideUniverseError, SemanticError,
                     UniverseMismatchError)
from .lattice import (Degree, Lattice, LRelation, LSet, inf_degrees, join,
                      lset_includes, lset_intersect, lset_union, meet, otimes,
                      residuum, residuum_by_search, sup_degrees)
from .syntax import (GradedTheory, Inequality, Signature, Substitution, Term,
                     TermUniverse, Theory, app, apply_substitution, const,
                     free_vars, generate_universe, parse_inequality,
                     parse_term_text, parse_theory, positions, render_term,
                     replace_subterm, subterm_at, term_depth, var)
from .semantics import (AlgebraReport, ConditionCheck, FactorResult,
                        FuzzyOrderedAlgebra, HomReport, PreorderReport,
                        SemanticBound, check_fuzzy_ordered_algebra,
                        check_homomorphism, check_preorder_on_algebra,
                        check_preorder_on_universe, dump_model,
                        enumerate_models, eval_term, factor_algebra,
                        is_model, load_model, model_preorder,
                        preorder_from_hom, semantic_closure_bounded,
                        semantic_degree_bounded, truth_degree,
                        truth_degree_at)
from .engine import (ByRule, Certificate, ClosureState, DerivedRuleReport,
                     Proof, ProofCheck, ProofStep, certify_degree,
                     check_proof, closure_obeys_rules, derived_rule_check,
                     extract_proof, identity_axioms, proof_from_json,
                     proof_to_json, provability_degree, syntactic_closure)
from .ai import (AIClosure, AITheory, AIUniverse, AttributeSet,
                 GroundNormalForm, ai_laws, ai_prove_degree, ai_universe,
                 armstrong_closure, build_ai_signature, classical_satisfaction,
                 is_law_instance, lattice_model, nf_to_term, normalize_ac,
                 parse_ai_query, parse_ai_theory, rule_system_closure)

__version__ = "0.1.0"
