"""Content-addressed on-disk cache with atomic writes."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

SCHEMA = "regkit-cache-v1"
ENV_VAR = "REGKIT_CACHE_DIR"


def default_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "regkit"


class Cache:
    def __init__(self, root: str | os.PathLike | None = None):
        self.root = Path(root) if root is not None else default_dir()

    @staticmethod
    def key(kind: str, fields: dict) -> str:
        blob = json.dumps({"schema": SCHEMA, "kind": kind, "fields": fields}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()

    def path(self, kind: str, fields: dict) -> Path:
        return self.root / f"{kind}-{self.key(kind, fields)[:32]}.json"

    def get(self, kind: str, fields: dict) -> str | None:
        p = self.path(kind, fields)
        try:
            text = p.read_text()
        except OSError:
            return None
        try:
            doc = json.loads(text)
        except ValueError:
            return None
        if doc.get("schema") != SCHEMA or doc.get("fields") != fields:
            return None
        return doc["payload"]

    def put(self, kind: str, fields: dict, payload: str) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        p = self.path(kind, fields)
        doc = json.dumps({"schema": SCHEMA, "kind": kind, "fields": fields, "payload": payload})
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(doc)
            os.replace(tmp, p)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return p
