"""
Provenance records and the output-directory lock.

Every artifact ``X`` gets a sibling ``X.provenance.json`` naming the command
that wrote it, the SHA-256 of every input file, the configuration and the
seed.
"""

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Dict, Iterable, Optional

from src.config import ARTIFACTS, FORMAT_VERSION, OUTPUT_CONFIG, PROVENANCE_SUFFIX
from src.utils.errors import MissingArtifactError, OutputLockedError
from .array_container import PathLike, atomic_write_text

logger = logging.getLogger(__name__)

_CHUNK = 1 << 20


def file_sha256(path: PathLike) -> str:
    path = Path(path)
    if not path.is_file():
        raise MissingArtifactError(f"Missing artifact: {path}")
    digest = hashlib.sha256()
    with open(path, 'rb') as handle:
        for chunk in iter(lambda: handle.read(_CHUNK), b''):
            digest.update(chunk)
    return digest.hexdigest()


def provenance_path(artifact: PathLike) -> Path:
    artifact = Path(artifact)
    return artifact.with_name(artifact.name + PROVENANCE_SUFFIX)


def write_json(path: PathLike, data: dict) -> Path:
    text = json.dumps(data, indent=OUTPUT_CONFIG['json_indent'], sort_keys=True, default=str)
    return atomic_write_text(path, text + '\n')


def read_json(path: PathLike) -> dict:
    path = Path(path)
    if not path.is_file():
        raise MissingArtifactError(f"Missing artifact: {path}")
    with open(path, 'r', encoding='utf-8') as handle:
        return json.load(handle)


def write_provenance(
    artifact: PathLike,
    command: str,
    inputs: Iterable[PathLike] = (),
    config: Optional[dict] = None,
    seed: Optional[int] = None,
    extra: Optional[dict] = None,
) -> Path:
    """Record how ``artifact`` was produced next to it."""
    artifact = Path(artifact)
    record = {
        'artifact': artifact.name,
        'sha256': file_sha256(artifact),
        'command': command,
        'inputs': {Path(p).name: file_sha256(p) for p in inputs},
        'config': config or {},
        'seed': seed,
        'format_version': FORMAT_VERSION,
    }
    if extra:
        record.update(extra)
    return write_json(provenance_path(artifact), record)


def read_provenance(artifact: PathLike) -> Dict:
    return read_json(provenance_path(artifact))


class OutputLock:
    """
    Exclusive lock on an output directory, held for one command.

    Example:
        >>> with OutputLock(out_dir):
        ...     run_command()
    """

    def __init__(self, directory: PathLike):
        self.path = Path(directory) / ARTIFACTS['lock']
        self._held = False

    def acquire(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        try:
            fd = os.open(self.path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError as exc:
            raise OutputLockedError(
                f"{self.path.parent} is locked by another command (remove {self.path} if stale)"
            ) from exc
        with os.fdopen(fd, 'w') as handle:
            handle.write(str(os.getpid()))
        self._held = True

    def release(self) -> None:
        if self._held:
            self.path.unlink(missing_ok=True)
            self._held = False

    def __enter__(self) -> 'OutputLock':
        self.acquire()
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        self.release()
