"""Knowledge-based emoji recommendation from image classes and captions."""

from .evaluation import (
    AnnotationFormatError,
    AnnotationSet,
    EvalReport,
    GridConfig,
    LabeledQuery,
    NoValidQueriesError,
    QueryFormatError,
    cohen_kappa,
    evaluate,
    hit_at_k,
    load_annotations,
    load_queries,
    majority_label,
    pairwise_kappa,
    scan_queries,
    top_frequent_golds,
)
from .inventory import (
    DuplicateCodepointError,
    EmojiInventory,
    EmojiRecord,
    InventoryFormatError,
    STRATEGIES,
    Sense,
    knowledge_text,
    load_inventory,
    normalize_codepoint,
)
from .preprocessing import (
    RuleLemmatizer,
    default_stopwords,
    load_stopwords,
    preprocess,
    tokenize,
)
from .ranking import NoCandidatesError, Ranking, cosine, rank
from .recommender import EmojiRecommender
from .store import (
    BowResult,
    EmbeddingFormatError,
    EmbeddingStore,
    EmptyEmbeddingFileError,
    TokenCounts,
    bow_embedding,
    load_word_embeddings,
)
from .vectorize import (
    ClassProbabilities,
    EmojiVectorSet,
    EmptyQueryError,
    FUSIONS,
    MODES,
    QueryVector,
    build_emoji_vectors,
    caption_vector,
    class_label_vector,
    compose_query,
    image_vector,
)

__version__ = "0.1.0"

__all__ = [
    "AnnotationFormatError",
    "AnnotationSet",
    "BowResult",
    "ClassProbabilities",
    "DuplicateCodepointError",
    "EmbeddingFormatError",
    "EmbeddingStore",
    "EmojiInventory",
    "EmojiRecommender",
    "EmojiRecord",
    "EmojiVectorSet",
    "EmptyEmbeddingFileError",
    "EmptyQueryError",
    "EvalReport",
    "FUSIONS",
    "GridConfig",
    "InventoryFormatError",
    "LabeledQuery",
    "MODES",
    "NoCandidatesError",
    "NoValidQueriesError",
    "QueryFormatError",
    "QueryVector",
    "Ranking",
    "RuleLemmatizer",
    "STRATEGIES",
    "Sense",
    "TokenCounts",
    "bow_embedding",
    "build_emoji_vectors",
    "caption_vector",
    "class_label_vector",
    "cohen_kappa",
    "compose_query",
    "cosine",
    "default_stopwords",
    "evaluate",
    "hit_at_k",
    "image_vector",
    "knowledge_text",
    "load_annotations",
    "load_inventory",
    "load_queries",
    "load_stopwords",
    "load_word_embeddings",
    "majority_label",
    "normalize_codepoint",
    "pairwise_kappa",
    "preprocess",
    "rank",
    "scan_queries",
    "tokenize",
    "top_frequent_golds",
]
