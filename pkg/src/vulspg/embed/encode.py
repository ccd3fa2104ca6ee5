"""Initial node vectors: token embeddings + positional encodings, token
attention across each statement, and the fusing linear layer."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from vulspg.errors import ConfigError, DimensionError
from vulspg.embed.vocab import PAD, Vocabulary
from vulspg.tensor import Tensor, concat, constant, flatten, matmul, mul, one_hot, scale, softmax, transpose

#: Statement kinds the graphs produce, plus a reserved OTHER slot.
DEFAULT_TYPE_VOCAB = (
    "FunctionDef",
    "Parameter",
    "DeclStatement",
    "ExpressionStatement",
    "IfStatement",
    "WhileStatement",
    "ForStatement",
    "ReturnStatement",
    "OTHER",
)


@dataclass
class NodeInitConfig:
    c: int = 64          # token embedding width
    m: int = 32          # tokens per statement (truncate/pad)
    a: int = 4           # attention heads; must divide c
    z: int = 64          # node vector width
    type_vocab: tuple[str, ...] = DEFAULT_TYPE_VOCAB

    def __post_init__(self):
        if self.m < 1 or self.z < 1:
            raise ConfigError(f"m and z must be positive (m={self.m}, z={self.z})")
        if self.c % 2 != 0:
            raise ConfigError(f"token embedding width must be even, got {self.c}")
        if self.c % self.a != 0:
            raise ConfigError(f"heads must divide the embedding width ({self.a} vs {self.c})")
        if "OTHER" not in self.type_vocab:
            self.type_vocab = tuple(self.type_vocab) + ("OTHER",)

    def type_index(self, kind: str) -> int:
        try:
            return self.type_vocab.index(kind)
        except ValueError:
            return self.type_vocab.index("OTHER")

    @property
    def fused_input_width(self) -> int:
        return self.m * self.c + len(self.type_vocab)


def positional_encoding(m: int, c: int) -> np.ndarray:
    """Sinusoidal position table: sin on even columns, cos on odd ones,
    both driven by pos / 10000^(2k/c)."""
    if c % 2 != 0:
        raise ConfigError(f"positional encoding needs an even width, got {c}")
    pe = np.zeros((m, c))
    pos = np.arange(m, dtype=np.float64)[:, None]
    k = np.arange(c // 2, dtype=np.float64)[None, :]
    angle = pos / np.power(10000.0, 2.0 * k / c)
    pe[:, 0::2] = np.sin(angle)
    pe[:, 1::2] = np.cos(angle)
    return pe


def statement_matrix(
    tokens: list[str],
    vocab: Vocabulary,
    table: np.ndarray,
    cfg: NodeInitConfig,
    pe: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """(m x c) token matrix with positional encodings plus a PAD mask.

    Longer statements are truncated to m tokens; PAD rows stay all-zero.
    """
    if pe is None:
        pe = positional_encoding(cfg.m, cfg.c)
    ids = vocab.encode(tokens)[: cfg.m]
    mat = np.zeros((cfg.m, cfg.c))
    pad_mask = np.ones(cfg.m, dtype=bool)
    for row, idx in enumerate(ids):
        if idx == PAD:
            continue
        mat[row] = table[idx] + pe[row]
        pad_mask[row] = False
    return mat, pad_mask


@dataclass
class HeadParams:
    wq: Tensor
    wk: Tensor
    wv: Tensor


@dataclass
class TokenAttentionParams:
    heads: list[HeadParams] = field(default_factory=list)

    def named(self, prefix: str) -> dict[str, Tensor]:
        out = {}
        for i, h in enumerate(self.heads):
            out[f"{prefix}.head{i}.wq"] = h.wq
            out[f"{prefix}.head{i}.wk"] = h.wk
            out[f"{prefix}.head{i}.wv"] = h.wv
        return out


def token_attention(
    matrix: np.ndarray,
    pad_mask: np.ndarray,
    params: TokenAttentionParams,
    cfg: NodeInitConfig,
) -> Tensor:
    """Multi-head self-attention over one statement, flattened to m*c.

    PAD key columns are masked out of every softmax and PAD output rows
    are zeroed, so padding never leaks into the result. Scores scale by
    1/sqrt(c) over the full embedding width.
    """
    m, c = matrix.shape
    if (m, c) != (cfg.m, cfg.c):
        raise DimensionError(f"statement matrix {matrix.shape} does not match config ({cfg.m}, {cfg.c})")
    head_w = cfg.c // cfg.a
    if params.heads and params.heads[0].wq.shape != (cfg.c, head_w):
        raise DimensionError(
            f"head width mismatch: {params.heads[0].wq.shape} vs ({cfg.c}, {head_w})"
        )
    t = constant(matrix)
    key_mask = constant(np.where(pad_mask, -1e30, 0.0)[None, :].repeat(m, axis=0))
    row_mask = constant((~pad_mask).astype(np.float64)[:, None].repeat(head_w, axis=1))
    outputs = []
    inv_sqrt_c = 1.0 / np.sqrt(float(cfg.c))
    for head in params.heads:
        q = matmul(t, head.wq)
        k = matmul(t, head.wk)
        v = matmul(t, head.wv)
        scores = scale(matmul(q, transpose(k)), inv_sqrt_c)
        att = softmax(scores + key_mask, axis=-1)
        outputs.append(mul(matmul(att, v), row_mask))
    return flatten(concat(outputs, axis=1))


def init_node(
    x_se: Tensor,
    node_type: str,
    w_l: Tensor,
    b_l: Tensor,
    cfg: NodeInitConfig,
) -> Tensor:
    """Fuse the semantic vector with the node-type one-hot through the
    trainable linear layer; unknown types fall into the OTHER slot."""
    x_type = one_hot(cfg.type_index(node_type), len(cfg.type_vocab))
    fused = concat([x_se, x_type])
    return matmul(fused, w_l) + b_l
