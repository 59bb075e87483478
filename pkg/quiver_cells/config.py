"""Configuration: budgets, degrees, worker counts and report folders.

Environment (optionally from .env):
- TQC_MAX_DEGREE, TQC_NODE_BUDGET, TQC_THREADS, TQC_SEED, TQC_LOG_LEVEL
- TQC_REPORT_FOLDER for ``--save`` output
"""
import os
from datetime import datetime

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Degree bound D for generation-degree and Gröbner checks
MAX_DEGREE = int(os.getenv("TQC_MAX_DEGREE", "6"))

# Search budgets
NODE_BUDGET = int(os.getenv("TQC_NODE_BUDGET", "5000000"))  # enumeration nodes per call
MAX_VERTICES = int(os.getenv("TQC_MAX_VERTICES", "32"))  # brute-force facets / equivalence
MAX_FACET_DIM = int(os.getenv("TQC_MAX_FACET_DIM", "6"))
ZERO_CELL_MAX_ARROWS = int(os.getenv("TQC_ZERO_CELL_MAX_ARROWS", "20"))  # 2^|Q1| scan
CATALOG_MAX_N = int(os.getenv("TQC_CATALOG_MAX_N", "5"))

# Reporting
MAX_WITNESSES = int(os.getenv("TQC_MAX_WITNESSES", "8"))
LOG_LEVEL = os.getenv("TQC_LOG_LEVEL", "WARNING").upper()

# Workers and sampling
THREADS = max(1, int(os.getenv("TQC_THREADS", "1")))
SEED = int(os.getenv("TQC_SEED", "0"))
CORPUS_SIZE = int(os.getenv("TQC_CORPUS_SIZE", "500"))

CHECK_NORMALITY = os.getenv("TQC_CHECK_NORMALITY", "true").lower() in ("true", "1", "yes")

# Cache for run directory to prevent multiple numbered folders
_run_directory_cache = None


def reset_run_directory_cache():
    """Reset the run directory cache to force re-evaluation."""
    global _run_directory_cache
    _run_directory_cache = None


def get_run_directory():
    """
    Get the report directory for today, creating a numbered folder if needed.

    Format: {REPORT_FOLDER}/MM-DD-YYYY or {REPORT_FOLDER}/MM-DD-YYYY (2), etc.

    Returns:
        str: Path to the run directory
    """
    global _run_directory_cache

    if _run_directory_cache is not None:
        return _run_directory_cache

    report_base = os.getenv("TQC_REPORT_FOLDER", "reports")
    base_date = datetime.now().strftime('%m-%d-%Y')
    base_path = f"{report_base}/{base_date}"

    if not os.path.exists(base_path) or not os.listdir(base_path):
        _run_directory_cache = base_path
        return base_path

    counter = 2
    while True:
        numbered_path = f"{report_base}/{base_date} ({counter})"
        if not os.path.exists(numbered_path) or not os.listdir(numbered_path):
            _run_directory_cache = numbered_path
            return numbered_path
        counter += 1
        if counter > 100:
            raise RuntimeError("Too many runs for today (>100). Please check the reports folder.")


def DATA_DIR():
    """Get the run directory path and ensure it exists."""
    data_dir = get_run_directory()
    os.makedirs(data_dir, exist_ok=True)
    return data_dir
