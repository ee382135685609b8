from logging import getLogger
from pathlib import Path
from typing import Generator, List, Optional, Sequence, Tuple, Union

import yaml

from ..instance_format import Instance, read_instance
from .import_records import CorpusRecord, import_records

logger = getLogger(__name__)


def _identify_filepaths(input_path: Union[str, Path], path_pattern: str) -> List[Path]:
    path = Path(input_path)

    if path.is_file():
        return [path]

    return sorted(path.glob(path_pattern))


def _batch(iterable: Sequence, batch_size: int = 1) -> Generator:
    full_length = len(iterable)
    for ndx in range(0, full_length, batch_size):
        yield iterable[ndx : min(ndx + batch_size, full_length)]  # noqa: E203


def import_icx(
    path: Union[str, Path],
    path_pattern: str = "**/*.icx",
    batch_size: Optional[int] = None,
) -> List[Tuple[Path, Instance]]:
    """Read one instance file, or every file under a directory matching `path_pattern`."""

    file_paths = _identify_filepaths(path, path_pattern)

    if len(file_paths) == 0:
        logger.warning("Didn't find any files to import")
        return []

    if not batch_size:
        batch_size = len(file_paths)

    instances = []

    for file_batch in _batch(file_paths, batch_size):
        for file_path in file_batch:
            logger.info("Processing %s", file_path)
            instances.append((file_path, read_instance(file_path)))

    return instances


def import_yaml(
    path: Union[str, Path],
    path_pattern: str = "**/*.yaml",
    batch_size: Optional[int] = None,
    validate_only: bool = False,
) -> List[CorpusRecord]:
    """Load corpus manifest records; each file may hold several YAML documents."""

    file_paths = _identify_filepaths(path, path_pattern)

    if len(file_paths) == 0:
        logger.warning("Didn't find any files to import")
        return []

    if batch_size is None:
        batch_size = len(file_paths)

    records: List[CorpusRecord] = []

    for file_batch in _batch(file_paths, batch_size):
        input_records = []

        for file_path in file_batch:
            logger.info("Processing %s", file_path)
            with open(file_path, "r", encoding="utf-8") as yaml_file:
                raw_record_data = yaml.safe_load_all(yaml_file)

                input_records.append([x for x in raw_record_data])

        records += import_records(input_records, validate_only=validate_only)

    return records
