"""
Shared utilities for the toric exceptional collection toolkit.
"""

import json
import logging
from pathlib import Path
from typing import Union, Optional

# Setup logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('toric-collections')

# Project paths
PROJECT_ROOT = Path(__file__).parent.parent
DATA_DIR = PROJECT_ROOT / 'data'
FANS_DIR = DATA_DIR / 'fans'
COLLECTIONS_DIR = DATA_DIR / 'collections'
PROCESSED_DATA_DIR = DATA_DIR / 'processed'

# Pairwise face checks in validate() run only on fans with at most this many
# maximal cones.
FACE_CHECK_MAX_CONES = 40

# Default level bound for the Frobenius sweep oracle
DEFAULT_SWEEP_LMAX = 24

# Points sampled outside the cohomology bounding box in debug mode
ACYCLICITY_SAMPLES = 8


def set_verbosity(verbose: bool = False, quiet: bool = False) -> None:
    """Switch the shared logger between DEBUG, INFO and WARNING."""
    if verbose:
        logger.setLevel(logging.DEBUG)
    elif quiet:
        logger.setLevel(logging.WARNING)
    else:
        logger.setLevel(logging.INFO)


def dump_json(data: Union[dict, list]) -> str:
    """
    Serialize report data deterministically.

    Keys are sorted so identical inputs produce byte-identical output.
    """
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)


def save_json(data: Union[dict, list], filepath: Path) -> Path:
    """
    Save data to a JSON file.

    Args:
        data: The data to save
        filepath: Destination path (parent directories are created)

    Returns:
        Path to saved file
    """
    filepath = Path(filepath)
    filepath.parent.mkdir(parents=True, exist_ok=True)

    with open(filepath, 'w', encoding='utf-8') as f:
        f.write(dump_json(data))
        f.write('\n')

    logger.info(f"Saved {filepath}")
    return filepath


def load_json(filepath: Union[str, Path]) -> Union[dict, list]:
    """
    Load a JSON file.

    Args:
        filepath: Path to the file

    Returns:
        Parsed JSON data

    Raises:
        FileNotFoundError: if the file does not exist
        json.JSONDecodeError: if the file is not valid JSON
    """
    with open(filepath, 'r', encoding='utf-8') as f:
        return json.load(f)


def save_processed_data(data: Union[dict, list], filename: str) -> Path:
    """
    Save a generated report to the processed directory.

    Args:
        data: The report to save
        filename: Name of the file (e.g., 'table1.json')

    Returns:
        Path to saved file
    """
    return save_json(data, PROCESSED_DATA_DIR / filename)


def load_processed_data(filename: str) -> Optional[Union[dict, list]]:
    """
    Load a generated report.

    Args:
        filename: Name of the file to load

    Returns:
        Loaded data or None if not found
    """
    filepath = PROCESSED_DATA_DIR / filename

    if not filepath.exists():
        logger.warning(f"No report found at {filepath}")
        return None

    return load_json(filepath)
