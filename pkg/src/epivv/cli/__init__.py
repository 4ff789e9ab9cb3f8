from .main import build_parser, execute, main
from .report import Report, render_machine, render_text

__all__ = ["Report", "build_parser", "execute", "main", "render_machine", "render_text"]
