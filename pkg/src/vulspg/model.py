"""Graph classifier: relation-aware graph convolutions per graph view,
node-level attention readout, subgraph-level attention, and a softmax
classifier head.

Four views of every slice property graph are encoded with independent
parameter sets: the full graph plus its control-, data-, and call-edge
subgraphs. Each convolution layer averages in-neighbor states per edge
kind through a relation-specific weight matrix and adds a transformed
self state. Node states across all layers are concatenated, reduced to a
graph vector by attention over nodes, and the three subgraph vectors are
blended by a second attention stage scored against the full-graph vector.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from vulspg.errors import ConfigError, DimensionError, UsageError
from vulspg.embed.encode import (
    NodeInitConfig,
    TokenAttentionParams,
    HeadParams,
    init_node,
    positional_encoding,
    statement_matrix,
    token_attention,
)
from vulspg.embed.vocab import Vocabulary
from vulspg.frontend.lexer import tokenize
from vulspg.graphs.dependence import EdgeKind
from vulspg.spg import Spg, split_subgraphs
from vulspg import tensor as T
from vulspg.tensor import Tensor


class GraphKind(str, Enum):
    SPG = "SPG"
    CDG = "CDG"
    DDG = "DDG"
    FCDG = "FCDG"


#: Edge kinds each graph view carries.
RELATIONS: dict[GraphKind, tuple[EdgeKind, ...]] = {
    GraphKind.SPG: (EdgeKind.DATA, EdgeKind.CONTROL, EdgeKind.FUNCTION_CALL),
    GraphKind.CDG: (EdgeKind.CONTROL,),
    GraphKind.DDG: (EdgeKind.DATA,),
    GraphKind.FCDG: (EdgeKind.FUNCTION_CALL,),
}

_ACTIVATIONS = {"relu": T.relu, "tanh": T.tanh}


@dataclass
class ModelConfig:
    node: NodeInitConfig = field(default_factory=NodeInitConfig)
    layers: int = 2
    rgcn_activation: str = "relu"
    score_activation: str = "tanh"
    seed: int = 0

    def __post_init__(self):
        if self.layers < 0:
            raise ConfigError(f"layers must be >= 0, got {self.layers}")
        for name in (self.rgcn_activation, self.score_activation):
            if name not in _ACTIVATIONS:
                raise ConfigError(f"unknown activation {name!r}")

    @property
    def feature_width(self) -> int:
        """Width of one graph feature vector: states of layers 0..L."""
        return (self.layers + 1) * self.node.z

    @property
    def classifier_width(self) -> int:
        return 2 * self.feature_width

    def to_dict(self) -> dict:
        return {
            "c": self.node.c,
            "m": self.node.m,
            "a": self.node.a,
            "z": self.node.z,
            "type_vocab": list(self.node.type_vocab),
            "layers": self.layers,
            "rgcn_activation": self.rgcn_activation,
            "score_activation": self.score_activation,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ModelConfig":
        node = NodeInitConfig(
            c=d["c"], m=d["m"], a=d["a"], z=d["z"], type_vocab=tuple(d["type_vocab"])
        )
        return cls(
            node=node,
            layers=d["layers"],
            rgcn_activation=d["rgcn_activation"],
            score_activation=d["score_activation"],
            seed=d.get("seed", 0),
        )


def glorot(rng: np.random.Generator, *shape: int) -> Tensor:
    """Uniform init scaled by fan-in/fan-out; vectors use fan-out 1."""
    fan_in = shape[0]
    fan_out = shape[1] if len(shape) > 1 else 1
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return T.parameter(rng.uniform(-limit, limit, size=shape))


@dataclass
class RgcnLayerParams:
    rel: dict[EdgeKind, Tensor]
    self_w: Tensor


@dataclass
class ReadoutParams:
    theta: dict[EdgeKind, Tensor]
    theta0: Tensor


@dataclass
class EncodedSpg:
    """Constant per-graph inputs: one token matrix and type per node plus
    in-neighbor averaging matrices per edge kind."""

    matrices: list[np.ndarray]
    pad_masks: list[np.ndarray]
    types: list[str]
    neighbor: dict[EdgeKind, np.ndarray]
    label: Optional[int] = None

    @property
    def n_nodes(self) -> int:
        return len(self.matrices)


def neighbor_matrix(n: int, edges: list[tuple[int, int]]) -> np.ndarray:
    """M[i, j] = 1/|N_i| when node j is an in-neighbor of node i."""
    m = np.zeros((n, n))
    incoming: dict[int, set[int]] = {}
    for src, dst in edges:
        incoming.setdefault(dst, set()).add(src)
    for dst, srcs in incoming.items():
        w = 1.0 / len(srcs)
        for src in srcs:
            m[dst, src] = w
    return m


def encode_spg_inputs(
    spg: Spg,
    vocab: Vocabulary,
    table: np.ndarray,
    cfg: ModelConfig,
    pe: np.ndarray | None = None,
) -> EncodedSpg:
    if pe is None:
        pe = positional_encoding(cfg.node.m, cfg.node.c)
    order = {node.sid: i for i, node in enumerate(spg.nodes)}
    matrices = []
    pad_masks = []
    types = []
    for node in spg.nodes:
        toks = [t.text for t in tokenize(node.text)]
        mat, mask = statement_matrix(toks, vocab, table, cfg.node, pe)
        matrices.append(mat)
        pad_masks.append(mask)
        types.append(node.type)
    neighbor = {}
    for kind in (EdgeKind.DATA, EdgeKind.CONTROL, EdgeKind.FUNCTION_CALL):
        pairs = [(order[e.src], order[e.dst]) for e in spg.edges if e.kind == kind]
        neighbor[kind] = neighbor_matrix(len(spg.nodes), pairs)
    return EncodedSpg(matrices, pad_masks, types, neighbor, spg.label)


class Model:
    """All trainable state plus the forward pass."""

    def __init__(self, cfg: ModelConfig, vocab: Vocabulary, table: np.ndarray):
        if table.shape != (len(vocab), cfg.node.c):
            raise DimensionError(
                f"embedding table {table.shape} does not match vocab/config "
                f"({len(vocab)}, {cfg.node.c})"
            )
        self.cfg = cfg
        self.vocab = vocab
        self.table = table  # frozen after pretraining
        self.pe = positional_encoding(cfg.node.m, cfg.node.c)
        rng = np.random.default_rng(cfg.seed)
        node = cfg.node
        head_w = node.c // node.a
        self.attn = TokenAttentionParams(
            [
                HeadParams(
                    wq=glorot(rng, node.c, head_w),
                    wk=glorot(rng, node.c, head_w),
                    wv=glorot(rng, node.c, head_w),
                )
                for _ in range(node.a)
            ]
        )
        self.w_l = glorot(rng, node.fused_input_width, node.z)
        self.b_l = T.parameter(np.zeros(node.z))
        self.rgcn: dict[GraphKind, list[RgcnLayerParams]] = {}
        for gk in GraphKind:
            layers = []
            for _ in range(cfg.layers):
                layers.append(
                    RgcnLayerParams(
                        rel={d: glorot(rng, node.z, node.z) for d in RELATIONS[gk]},
                        self_w=glorot(rng, node.z, node.z),
                    )
                )
            self.rgcn[gk] = layers
        fw = cfg.feature_width
        self.readout: dict[GraphKind, ReadoutParams] = {}
        for gk in GraphKind:
            self.readout[gk] = ReadoutParams(
                theta={d: glorot(rng, fw) for d in RELATIONS[gk]},
                theta0=glorot(rng, fw),
            )
        self.w_r = glorot(rng, fw, fw)
        self.w_cn = glorot(rng, cfg.classifier_width, 2)
        self.b_cn = T.parameter(np.zeros(2))

    # -- parameters ---------------------------------------------------

    def named_parameters(self) -> dict[str, Tensor]:
        out: dict[str, Tensor] = {}
        out.update(self.attn.named("attn"))
        out["fuse.w"] = self.w_l
        out["fuse.b"] = self.b_l
        for gk, layers in self.rgcn.items():
            for li, layer in enumerate(layers):
                for d, w in layer.rel.items():
                    out[f"rgcn.{gk.value}.l{li}.{d.value}"] = w
                out[f"rgcn.{gk.value}.l{li}.self"] = layer.self_w
        for gk, ro in self.readout.items():
            for d, th in ro.theta.items():
                out[f"read.{gk.value}.theta.{d.value}"] = th
            out[f"read.{gk.value}.theta0"] = ro.theta0
        out["w_r"] = self.w_r
        out["w_cn"] = self.w_cn
        out["b_cn"] = self.b_cn
        return out

    def zero_grad(self):
        for p in self.named_parameters().values():
            p.zero_grad()

    # -- forward pieces -------------------------------------------------

    def node_init(self, enc: EncodedSpg) -> Tensor:
        """Initial node states, one row per node."""
        rows = []
        for mat, mask, type_name in zip(enc.matrices, enc.pad_masks, enc.types):
            x_se = token_attention(mat, mask, self.attn, self.cfg.node)
            rows.append(init_node(x_se, type_name, self.w_l, self.b_l, self.cfg.node))
        return T.stack_rows(rows)

    def rgcn_layer(self, h: Tensor, layer: RgcnLayerParams, enc: EncodedSpg) -> Tensor:
        act = _ACTIVATIONS[self.cfg.rgcn_activation]
        total = T.matmul(h, layer.self_w)
        for d, w in layer.rel.items():
            m = enc.neighbor[d]
            if not m.any():
                continue  # no in-neighbors anywhere under this relation
            total = total + T.matmul(T.constant(m), T.matmul(h, w))
        return act(total)

    def encode_graph(self, gk: GraphKind, x: Tensor, enc: EncodedSpg) -> Tensor:
        """Concatenate node states of layers 0..L (row per node)."""
        states = [x]
        h = x
        for layer in self.rgcn[gk]:
            h = self.rgcn_layer(h, layer, enc)
            states.append(h)
        if len(states) == 1:
            return states[0]
        return T.concat(states, axis=1)

    def node_attention_readout(self, gk: GraphKind, hcat: Tensor, enc: EncodedSpg) -> Tensor:
        """Attention-weighted sum of node states; empty graphs give zeros."""
        if enc.n_nodes == 0:
            return T.constant(np.zeros(self.cfg.feature_width))
        act = _ACTIVATIONS[self.cfg.score_activation]
        ro = self.readout[gk]
        scores = T.matmul(hcat, ro.theta0)
        for d, th in ro.theta.items():
            m = enc.neighbor[d]
            if not m.any():
                continue
            scores = scores + T.matmul(T.constant(m), T.matmul(hcat, th))
        alpha = T.softmax(act(scores))
        return T.matmul(alpha, hcat)

    def subgraph_attention(self, s_spg: Tensor, subs: dict[GraphKind, Tensor]) -> Tensor:
        """Blend subgraph vectors, scored bilinearly against the full graph."""
        order = (GraphKind.CDG, GraphKind.DDG, GraphKind.FCDG)
        scores = [T.matmul(subs[gk], T.matmul(self.w_r, s_spg)) for gk in order]
        beta = T.softmax(T.stack(scores))
        blended = None
        for i, gk in enumerate(order):
            part = T.smul(subs[gk], T.pick(beta, i))
            blended = part if blended is None else blended + part
        return blended

    def classify(self, s_spg: Tensor, s_as: Tensor) -> Tensor:
        logits = T.matmul(T.concat([s_spg, s_as]), self.w_cn) + self.b_cn
        return T.softmax(logits)

    def forward(self, enc: EncodedSpg) -> Tensor:
        """Probability pair p(y | graph)."""
        x = self.node_init(enc)
        restricted = {
            gk: EncodedSpg(
                enc.matrices,
                enc.pad_masks,
                enc.types,
                {d: enc.neighbor[d] for d in RELATIONS[gk]},
                enc.label,
            )
            for gk in GraphKind
        }
        features = {}
        for gk in GraphKind:
            hcat = self.encode_graph(gk, x, restricted[gk])
            features[gk] = self.node_attention_readout(gk, hcat, restricted[gk])
        s_spg = features[GraphKind.SPG]
        s_as = self.subgraph_attention(
            s_spg, {gk: features[gk] for gk in (GraphKind.CDG, GraphKind.DDG, GraphKind.FCDG)}
        )
        return self.classify(s_spg, s_as)


def predict_label(p: Tensor | np.ndarray) -> int:
    """Argmax with 50/50 ties resolved towards vulnerable."""
    probs = p.data if isinstance(p, Tensor) else np.asarray(p)
    return 1 if probs[1] >= probs[0] else 0


def loss(p: Tensor, label: int) -> Tensor:
    """Negative log probability of the true class, floor-clamped."""
    if label not in (0, 1):
        raise UsageError(f"label must be 0 or 1, got {label}")
    return T.neg(T.log(T.clamp_min(T.pick(p, label), 1e-12)))


def encode_for_model(spg: Spg, model: Model) -> EncodedSpg:
    return encode_spg_inputs(spg, model.vocab, model.table, model.cfg, model.pe)


# -- checkpoints ---------------------------------------------------------

CHECKPOINT_VERSION = 1


def save_checkpoint(model: Model, path: str):
    payload = checkpoint_payload(model)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)


def checkpoint_payload(model: Model) -> dict:
    return {
        "version": CHECKPOINT_VERSION,
        "config": model.cfg.to_dict(),
        "vocab": model.vocab.to_dict(),
        "embedding": {
            "shape": list(model.table.shape),
            "values": model.table.reshape(-1).tolist(),
        },
        "params": {
            name: {"shape": list(p.data.shape), "values": p.data.reshape(-1).tolist()}
            for name, p in sorted(model.named_parameters().items())
        },
    }


def load_checkpoint(path: str) -> Model:
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    return model_from_payload(payload)


def model_from_payload(payload: dict) -> Model:
    if payload.get("version") != CHECKPOINT_VERSION:
        raise ConfigError(f"unsupported checkpoint version {payload.get('version')!r}")
    cfg = ModelConfig.from_dict(payload["config"])
    vocab = Vocabulary.from_dict(payload["vocab"])
    emb = payload["embedding"]
    table = np.asarray(emb["values"], dtype=np.float64).reshape(emb["shape"])
    model = Model(cfg, vocab, table)
    params = model.named_parameters()
    stored = payload["params"]
    if set(stored) != set(params):
        missing = set(params) ^ set(stored)
        raise ConfigError(f"checkpoint parameter mismatch: {sorted(missing)[:5]}")
    for name, p in params.items():
        entry = stored[name]
        arr = np.asarray(entry["values"], dtype=np.float64).reshape(entry["shape"])
        if arr.shape != p.data.shape:
            raise DimensionError(f"checkpoint shape mismatch for {name}: {arr.shape} vs {p.data.shape}")
        p.data = arr
    return model
