"""
Script to export the bundled corpus.
Run this to write every built-in example input as JSON under CORPUS_DIR.
"""
import logging
import sys
from pathlib import Path

from hopfkit.config import settings
from hopfkit.errors import HopfkitError
from hopfkit.services.corpus_service import export_corpus

logger = logging.getLogger(__name__)


def export_bundled_inputs(directory: Path) -> int:
    """Write the corpus and report what was written."""
    try:
        written = export_corpus(directory)
    except (HopfkitError, OSError) as exc:
        logger.error("export failed: %s", exc)
        return 1
    print(f"Wrote {len(written)} corpus files to {directory}")
    for path in written:
        print(f"  {path.name}")
    return 0


if __name__ == "__main__":
    logging.basicConfig(level=settings.LOG_LEVEL, stream=sys.stderr)
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(settings.CORPUS_DIR)
    sys.exit(export_bundled_inputs(target))
