"""
Self-describing binary container for one array plus JSON metadata.

Layout:
    magic        8 bytes   b"GWSURR01"
    header_len   uint32    little-endian
    header       UTF-8 JSON {"dtype", "shape", "format_version", "metadata"}
    payload      row-major little-endian values (f64 or c128)

Writes go to a temporary file in the target directory and are renamed into
place, so a reader never sees a partially written container.
"""

import json
import logging
import os
import struct
import tempfile
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np

from src.config import CONTAINER_DTYPES, CONTAINER_HEADER_STRUCT, CONTAINER_MAGIC, FORMAT_VERSION
from src.utils.errors import CorruptArtifactError, MissingArtifactError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

_HEADER_SIZE = struct.calcsize(CONTAINER_HEADER_STRUCT)


def _dtype_code(array: np.ndarray) -> str:
    return 'c128' if np.iscomplexobj(array) else 'f64'


def encode_array(array, metadata: Optional[dict] = None) -> bytes:
    """Serialize an array (real -> f64, complex -> c128) and its metadata."""
    array = np.asarray(array)
    code = _dtype_code(array)
    values = np.ascontiguousarray(array, dtype=CONTAINER_DTYPES[code])
    header = json.dumps(
        {
            'dtype': code,
            'shape': list(values.shape),
            'format_version': FORMAT_VERSION,
            'metadata': metadata or {},
        },
        sort_keys=True,
    ).encode('utf-8')
    return b''.join([
        CONTAINER_MAGIC,
        struct.pack(CONTAINER_HEADER_STRUCT, len(header)),
        header,
        values.tobytes(order='C'),
    ])


def decode_array(blob: bytes, source: str = '<bytes>') -> Tuple[np.ndarray, dict]:
    """
    Inverse of encode_array.

    Raises:
        CorruptArtifactError: on a bad magic, header or payload length
    """
    prefix = len(CONTAINER_MAGIC) + _HEADER_SIZE
    if len(blob) < prefix or blob[:len(CONTAINER_MAGIC)] != CONTAINER_MAGIC:
        raise CorruptArtifactError(f"{source}: not an array container (bad magic)")

    (header_len,) = struct.unpack(CONTAINER_HEADER_STRUCT, blob[len(CONTAINER_MAGIC):prefix])
    if len(blob) < prefix + header_len:
        raise CorruptArtifactError(f"{source}: truncated header")
    try:
        header = json.loads(blob[prefix:prefix + header_len].decode('utf-8'))
        code = header['dtype']
        shape = tuple(int(n) for n in header['shape'])
        dtype = np.dtype(CONTAINER_DTYPES[code])
    except (UnicodeDecodeError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise CorruptArtifactError(f"{source}: unreadable header ({exc})") from exc

    version = header.get('format_version', '')
    if version.split('.')[0] != FORMAT_VERSION.split('.')[0]:
        logger.warning("%s: format version %s, this build writes %s", source, version, FORMAT_VERSION)

    payload = blob[prefix + header_len:]
    expected = int(np.prod(shape, dtype=np.int64)) * dtype.itemsize
    if len(payload) != expected:
        raise CorruptArtifactError(
            f"{source}: payload holds {len(payload)} bytes, shape {shape} of {code} needs {expected}"
        )
    array = np.frombuffer(payload, dtype=dtype).reshape(shape).astype(dtype.newbyteorder('='))
    return array, header.get('metadata', {})


def atomic_write_bytes(path: PathLike, data: bytes) -> Path:
    """Write ``data`` to ``path`` through a temporary file and a rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f'.{path.name}.', suffix='.tmp', dir=path.parent)
    try:
        with os.fdopen(fd, 'wb') as handle:
            handle.write(data)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return path


def atomic_write_text(path: PathLike, text: str) -> Path:
    return atomic_write_bytes(path, text.encode('utf-8'))


def write_array(path: PathLike, array, metadata: Optional[dict] = None) -> Path:
    """Atomically write one container file."""
    path = atomic_write_bytes(path, encode_array(array, metadata))
    logger.debug("Wrote %s %s", path.name, np.shape(array))
    return path


def read_array(path: PathLike) -> Tuple[np.ndarray, dict]:
    """
    Read one container file.

    Raises:
        MissingArtifactError: if the file does not exist
        CorruptArtifactError: if validation fails
    """
    path = Path(path)
    if not path.is_file():
        raise MissingArtifactError(f"Missing artifact: {path}")
    return decode_array(path.read_bytes(), source=str(path))
