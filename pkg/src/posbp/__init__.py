"""Toolkit for sequent calculi over (positive) nondeterministic branching programs.

Four dialects of one line-based checker (general, extended, positive, positive
with negative literals, plus threshold-parametrised systems), brute-force
semantics, OBDD builders, mechanical generators for the counting lemmas and
the pigeonhole proofs, and the positive simulation of general-decision proofs.
"""

from .bp import (Nbp, build_exact_obdd, eval_nbp, is_positive_nbp, is_read_once,
                 nbp_dot, nbp_text, nbp_to_endt, parse_nbp, positive_closure)
from .counting import (LemmaEngine, gen_case_analysis, gen_identity, gen_merge,
                       gen_pos_medial, gen_replacement, gen_split, gen_symmetry,
                       gen_thr_monotone, gen_thresh_increment, gen_truth,
                       gen_two_in_hole, gen_unit_thr)
from .kernel import OracleCapError, TableOracle, kernel_name
from .php import PhpInstance, gen_php, gen_php_left, gen_php_right, \
    gen_php_transpose, php_sequent
from .proofbuild import Builder, BuildError, prune_proof
from .search import prove_by_search
from .sequents import (ELNDT, ELNDT_POS, ELNDT_POS_NEG, LNDT, TK, CheckResult,
                       Dialect, Proof, Sequent, check_proof, dialect_by_name,
                       display_sequent, dnf_to_positive_sequent, dnf_valid,
                       parse_proof, parse_sequent, proof_report, proof_size,
                       proof_text, rule_histogram, sequent_valid, unsound_line)
from .simulate import (SimContext, SimulateError, depositivize, eliminate_Tk,
                       gen_negtrans_truth, gen_refthr_truth, instantiate_refthr,
                       make_corpus, negtrans, negtrans_axioms, simulate,
                       strip_negtrans, translate_to_Tk, translate_to_minus,
                       ttrans)
from .tables import (TruthTable, is_monotone, monotone_closure, popcount_table,
                     table_of_function, truth_table)
from .terms import (AxiomViolation, Dec, ExactVar, Ext, ExtAxiomSet, Formula,
                    Lit, NegLit, One, Or, ParseError, PDec, PlainVar,
                    RefThrVar, TermError, ThrVar, Var, Zero, check_axiom_set,
                    desugar, display, evaluate, is_positive, parse_axiom_file,
                    parse_formula, posterm, repositivize, substitute)

__version__ = "0.1.0"
