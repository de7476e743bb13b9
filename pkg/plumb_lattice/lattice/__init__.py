from .canonical import canonical_form, is_standard, support
from .complement import complement_gram, complement_report, orthogonal_complement_check
from .rigidity import is_rigid, is_subgraph_rigid, rigidity_sweep
from .search import SearchBudget, enumerate_embeddings, iter_embeddings, minimal_dimension, standard_embedding

__all__ = [
    "SearchBudget",
    "canonical_form",
    "complement_gram",
    "complement_report",
    "enumerate_embeddings",
    "is_rigid",
    "is_standard",
    "is_subgraph_rigid",
    "iter_embeddings",
    "minimal_dimension",
    "orthogonal_complement_check",
    "rigidity_sweep",
    "standard_embedding",
    "support",
]
