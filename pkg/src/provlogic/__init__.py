"""Decision procedures, certified proof objects and uniform interpolation
for the provability logics GL and Grz, with a finite-Kripke-model oracle."""

import sys as _sys

# Closure replay and interpolant construction recurse to roughly the formula
# weight; large interpolants need headroom.
_sys.setrecursionlimit(max(_sys.getrecursionlimit(), 100_000))

from .formula import (Formula, ParseError, atom, bot, box, box_depth, conj,
                      dia, diagonal, disj, fprint, iff, imp, neg, parse,
                      subformulas, substitute, top, variables, weight)
from .sequent import (EMPTY, Logic, Multiset, Sequent, boxed_set_size, closure,
                      extend, is_critical, mset, parse_sequent, seq_weight,
                      sequent_str)
from .kripke import (KripkeModel, bounded_countermodel, eval_at, eval_plain,
                     frame_check, model_str, parse_model, refutes)
from .proofkit import (InternalError, Proof, ProofError, check_proof, contract,
                       cut, invert, parse_proof, proof_str, validate_proof,
                       weaken)
from .prover_gl import SearchTree, countermodel_gl, extract_proof_gl, search_gl
from .prover_grz import countermodel_grz, extract_proof_grz, search_grz
from .interpolate import (InterpolationTask, check_preinterpolant, exists,
                          forall, forall_gl, forall_grz, provable, simplify,
                          trick_equivalence)
from .fixpoint import FixpointResult, dual_fixed_point, fixed_point, is_modalized

__version__ = "0.1.0"
