"""On-disk result store: one JSON document per key, written atomically.

Entries live under ``$RSL_STORE`` (default ``./.rsl-store``) as
``<kind>/<hex key>.json``. Each document carries a format version; a document
that fails to parse or re-validate is moved to ``quarantine/`` and reported
as absent.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Callable

from .graphcore import CanonicalCode, graph6_decode

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
KINDS = ("ramsey", "verdict", "candidates")


class StoreError(OSError):
    pass


def default_root() -> Path:
    return Path(os.environ.get("RSL_STORE", ".rsl-store"))


def ramsey_key(g_code: CanonicalCode, h_code: CanonicalCode) -> str:
    return f"{g_code.code.hex()}-{h_code.code.hex()}"


def graph_key(code: CanonicalCode) -> str:
    return code.code.hex()


def _validate_ramsey(doc: dict) -> bool:
    from .ramsey import RamseyResult, validate_witness

    res = RamseyResult.from_json(doc)
    if res.value is not None and res.value > 1:
        return res.witness is not None and res.witness.n == res.value - 1 and validate_witness(res.g, res.h, res.witness)
    return res.witness is None or validate_witness(res.g, res.h, res.witness)


def _validate_verdict(doc: dict) -> bool:
    from .certify import DensityCertificate, Status

    g = graph6_decode(doc["graph"])
    Status(doc["status"])
    if "density" in doc:
        return DensityCertificate.from_json(doc["density"]).check(g)
    return True


def _validate_candidates(doc: dict) -> bool:
    from .certify import DensityCertificate

    source = graph6_decode(doc["source"])
    for c in doc["candidates"]:
        cert = DensityCertificate.from_json(c["certificate"])
        if cert.slack != 0 or not cert.check(source):
            return False
    return True


VALIDATORS: dict[str, Callable[[dict], bool]] = {
    "ramsey": _validate_ramsey,
    "verdict": _validate_verdict,
    "candidates": _validate_candidates,
}


class ResultStore:
    def __init__(self, root: str | os.PathLike | None = None):
        self.root = Path(root) if root is not None else default_root()

    def _path(self, kind: str, key: str) -> Path:
        if kind not in KINDS:
            raise StoreError(f"unknown entry kind {kind!r}")
        if not key or any(c not in "0123456789abcdef-" for c in key):
            raise StoreError(f"malformed key {key!r}")
        return self.root / kind / f"{key}.json"

    def put(self, kind: str, key: str, data: dict) -> Path:
        path = self._path(kind, key)
        path.parent.mkdir(parents=True, exist_ok=True)
        doc = {"format_version": FORMAT_VERSION, "kind": kind, "key": key, "data": data}
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(doc, fh, sort_keys=True)
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return path

    def get(self, kind: str, key: str) -> dict | None:
        path = self._path(kind, key)
        try:
            text = path.read_text()
        except FileNotFoundError:
            return None
        try:
            doc = json.loads(text)
            ok = (
                doc.get("format_version") == FORMAT_VERSION
                and doc.get("kind") == kind
                and doc.get("key") == key
                and VALIDATORS[kind](doc["data"])
            )
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("store entry %s unreadable: %s", path, exc)
            ok = False
        if not ok:
            self._quarantine(path)
            return None
        return doc["data"]

    def _quarantine(self, path: Path) -> None:
        qdir = self.root / "quarantine"
        qdir.mkdir(parents=True, exist_ok=True)
        target = qdir / f"{path.parent.name}-{path.name}"
        try:
            os.replace(path, target)
            log.warning("quarantined corrupt store entry %s", path)
        except FileNotFoundError:
            pass
