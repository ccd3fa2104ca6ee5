"""vulspg: slice-property-graph vulnerability detection at desk scale.

Pipeline stages: C-subset frontend, per-function control/data dependence,
whole-program code property graph, six kinds of syntax-based slicing
criteria, slice property graph assembly, and a relational graph network
classifier with token/node/subgraph attention.
"""

__version__ = "0.1.0"
