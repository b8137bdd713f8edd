"""Regenerate the JSON workspaces in fixtures/ from lie2kit.fixtures."""

import os
import sys

from lie2kit.fixtures import write_fixture_files

if __name__ == "__main__":
    root = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "fixtures")
    write_fixture_files(sys.argv[1] if len(sys.argv) > 1 else root)
