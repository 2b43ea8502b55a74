from .render import FIGURE_IDS, CsvFormatError, FigureSpec, read_table, render

__all__ = ["FIGURE_IDS", "CsvFormatError", "FigureSpec", "read_table", "render"]
