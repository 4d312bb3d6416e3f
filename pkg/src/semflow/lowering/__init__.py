from semflow.lowering.model import ForNode, InterpNode, LoweringTemplate, RenderedOutput, TextNode
from semflow.lowering.parser import parse_template
from semflow.lowering.render import render

__all__ = [
    "LoweringTemplate", "RenderedOutput", "TextNode", "InterpNode", "ForNode",
    "parse_template", "render",
]
