"""Console entry point `e3-wasm-z3`: run the bundled WebAssembly Z3.

Behaves like a plain SMT-LIB solver binary reading the script on stdin, so
the subprocess runner (and anyone replaying dumped queries) can treat it
exactly like a native z3.
"""

from __future__ import annotations

import os
import shutil
import sys
from pathlib import Path


def shim_path() -> Path:
    return Path(__file__).resolve().parent / "data" / "z3shim.cjs"


def node_available() -> bool:
    return shutil.which("node") is not None


def main() -> None:
    node = shutil.which("node")
    if node is None:
        sys.stderr.write("e3-wasm-z3: node is required to run the WebAssembly z3\n")
        sys.exit(3)
    os.execv(node, [node, str(shim_path()), *sys.argv[1:]])


if __name__ == "__main__":
    main()
