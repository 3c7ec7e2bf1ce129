"""qrlab entry point: loads .env, then runs the CLI."""

import sys
from pathlib import Path

from dotenv import load_dotenv

# Load .env before settings are first read
load_dotenv(Path(__file__).parent.parent / ".env")

from src.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
