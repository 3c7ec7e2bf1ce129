# Output formatting
from src.report.writer import dump_json, format_fraction, format_real, histogram_csv, rows_csv, to_jsonable, write_text

__all__ = ["dump_json", "format_fraction", "format_real", "histogram_csv", "rows_csv", "to_jsonable", "write_text"]
