"""
Cayley tables on disk
=====================

Groups round-trip through a plain text format: an ``order N`` header, then
one row of the table per line.  Any file in this format can be analyzed
like a catalog group via ``file:<path>``.
"""

import tempfile
from pathlib import Path

from groupbounds import bounds, catalog

S3 = catalog.construct("symmetric:3")
print(catalog.format_cayley(S3))

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "s3.txt"
    catalog.serialize_cayley(S3, path)
    again = catalog.construct(f"file:{path}")
    print("same table:", again == S3)
    print(bounds.verify_group(again).to_dict()["lambda_m1"])

# malformed input is rejected with a position
try:
    catalog.parse_cayley("order 2\n0 1\n1 z\n")
except Exception as exc:
    print(type(exc).__name__, exc.to_dict())
