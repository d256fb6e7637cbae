"""Serializers for clustering results."""

from .newick import NewickSyntaxError, parse_newick, to_newick
from .svg import InvalidAxisRange, Orientation, RenderOptions, render_svg
from .text import sanitize_labels, to_text_details, ultrametric_to_txt

__all__ = [
    "InvalidAxisRange",
    "NewickSyntaxError",
    "Orientation",
    "RenderOptions",
    "parse_newick",
    "render_svg",
    "sanitize_labels",
    "to_newick",
    "to_text_details",
    "ultrametric_to_txt",
]
