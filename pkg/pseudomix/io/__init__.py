"""
State and report files.
"""

from pseudomix.io.files import read_report, read_state, write_report, write_state
from pseudomix.io.models import (
    ReportFile,
    StateFile,
    TermRecord,
    content_hash,
    decode_vector,
    encode_vector,
)
from pseudomix.io.verify import verify_report_file

__all__ = [
    "read_report",
    "read_state",
    "write_report",
    "write_state",
    "ReportFile",
    "StateFile",
    "TermRecord",
    "content_hash",
    "decode_vector",
    "encode_vector",
    "verify_report_file",
]
