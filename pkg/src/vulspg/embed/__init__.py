from vulspg.embed.encode import (
    DEFAULT_TYPE_VOCAB,
    HeadParams,
    NodeInitConfig,
    TokenAttentionParams,
    init_node,
    positional_encoding,
    statement_matrix,
    token_attention,
)
from vulspg.embed.sgns import build_schedule, numba_enabled, train_skipgram
from vulspg.embed.vocab import PAD, UNK, Vocabulary

__all__ = [
    "DEFAULT_TYPE_VOCAB",
    "HeadParams",
    "NodeInitConfig",
    "PAD",
    "TokenAttentionParams",
    "UNK",
    "Vocabulary",
    "build_schedule",
    "init_node",
    "numba_enabled",
    "positional_encoding",
    "statement_matrix",
    "token_attention",
    "train_skipgram",
]
