"""Coarse geometry of group actions on trees and lines."""

from ._core import (
    QtreekitError,
    bavard,
    brooks,
    brooks_defect,
    busemann_value,
    classify,
    coarse_components,
    convex_closure,
    element_type,
    end_counts,
    homogenise,
    named_actions,
    reduce_line,
    reduce_word,
    rips_edges,
    word_ball,
)

__all__ = [
    "QtreekitError",
    "bavard",
    "brooks",
    "brooks_defect",
    "busemann_value",
    "classify",
    "coarse_components",
    "convex_closure",
    "element_type",
    "end_counts",
    "homogenise",
    "named_actions",
    "reduce_line",
    "reduce_word",
    "rips_edges",
    "word_ball",
]
