"""Run manifests: the single source of truth for reproducing any random
output.  A manifest serializes losslessly to JSON; its hash (computed over
everything except the timestamp) names the output directory of a run."""

from __future__ import annotations

import dataclasses
import datetime
import hashlib
import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import __version__
from .noise import GridSpec

__all__ = ["RunManifest", "manifest_hash"]


@dataclass(frozen=True)
class RunManifest:
    command: str
    op: str
    H: float
    d: int
    grid: GridSpec
    drift: str
    sigma: tuple
    n_replicas: int
    base_seed: int
    method: str = "spectral"
    tolerances: tuple = ()
    tool_version: str = __version__
    timestamp: str = ""

    @staticmethod
    def create(command: str, op: str, H: float, d: int, grid: GridSpec,
               drift: str = "none", sigma=None, n_replicas: int = 1,
               base_seed: int = 0, method: str = "spectral",
               tolerances: Optional[dict] = None) -> "RunManifest":
        if sigma is None:
            sigma = np.eye(d)
        sigma = tuple(tuple(float(v) for v in row)
                      for row in np.asarray(sigma, dtype=float))
        tol = tuple(sorted((tolerances or {}).items()))
        stamp = datetime.datetime.now(datetime.timezone.utc).isoformat()
        return RunManifest(command=command, op=op, H=float(H), d=int(d),
                           grid=grid, drift=drift, sigma=sigma,
                           n_replicas=int(n_replicas),
                           base_seed=int(base_seed), method=method,
                           tolerances=tol, timestamp=stamp)

    def to_json(self) -> str:
        payload = dataclasses.asdict(self)
        payload["grid"] = dataclasses.asdict(self.grid)
        payload["sigma"] = [list(r) for r in self.sigma]
        payload["tolerances"] = {k: v for k, v in self.tolerances}
        return json.dumps(payload, indent=2, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "RunManifest":
        payload = json.loads(text)
        payload["grid"] = GridSpec(**payload["grid"])
        payload["sigma"] = tuple(tuple(r) for r in payload["sigma"])
        payload["tolerances"] = tuple(sorted(payload["tolerances"].items()))
        return RunManifest(**payload)


def manifest_hash(manifest: RunManifest) -> str:
    """Short content hash, timestamp excluded so reruns land in one place."""
    payload = json.loads(manifest.to_json())
    payload.pop("timestamp", None)
    canon = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:12]
