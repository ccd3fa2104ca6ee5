"""Token vocabulary with reserved PAD and UNK slots."""

from __future__ import annotations

from dataclasses import dataclass, field

PAD = 0
UNK = 1


@dataclass
class Vocabulary:
    index: dict[str, int] = field(default_factory=dict)

    @classmethod
    def build(cls, sentences: list[list[str]]) -> "Vocabulary":
        index = {"<pad>": PAD, "<unk>": UNK}
        for sent in sentences:
            for tok in sent:
                if tok not in index:
                    index[tok] = len(index)
        return cls(index)

    def __len__(self) -> int:
        return len(self.index)

    def __contains__(self, token: str) -> bool:
        return token in self.index

    def lookup(self, token: str) -> int:
        return self.index.get(token, UNK)

    def encode(self, tokens: list[str]) -> list[int]:
        return [self.lookup(t) for t in tokens]

    def to_dict(self) -> dict[str, int]:
        return dict(self.index)

    @classmethod
    def from_dict(cls, d: dict[str, int]) -> "Vocabulary":
        return cls(dict(d))
