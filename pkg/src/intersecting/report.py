"""Run manifests and report persistence."""

from __future__ import annotations

import csv
import hashlib
import json
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib import metadata
from pathlib import Path

from .oracles import VerificationReport, worst_status


def tool_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


def file_digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass
class RunManifest:
    argv: list[str]
    seed: int | None = None
    version: str = field(default_factory=tool_version)
    started: str = field(default_factory=_now)
    finished: str | None = None
    inputs: dict[str, str] = field(default_factory=dict)
    outputs: dict[str, str] = field(default_factory=dict)

    @classmethod
    def start(cls, argv: list[str] | None = None, seed: int | None = None) -> "RunManifest":
        return cls(argv=list(sys.argv if argv is None else argv), seed=seed)

    def add_input(self, path: str | Path) -> None:
        self.inputs[str(path)] = file_digest(path)

    def finish(self) -> None:
        self.finished = _now()

    def to_dict(self) -> dict:
        return {"version": self.version, "argv": self.argv, "seed": self.seed,
                "started": self.started, "finished": self.finished,
                "inputs": dict(sorted(self.inputs.items())),
                "outputs": dict(sorted(self.outputs.items()))}


def report_digest(body: dict) -> str:
    return hashlib.sha256(json.dumps(body, sort_keys=True).encode()).hexdigest()


def aggregate(name: str, reports: list[VerificationReport]) -> dict:
    items = sorted(reports, key=lambda r: (r.theorem, json.dumps(r.params, sort_keys=True)))
    return {"suite": name, "status": worst_status(r.status for r in items),
            "items": [r.to_dict() for r in items]}


def write_report(path: str | Path, body: dict, manifest: RunManifest) -> None:
    """Write ``body`` with its manifest; the manifest records the digest of the body."""
    manifest.outputs["report_body_sha256"] = report_digest(body)
    manifest.finish()
    doc = {**body, "manifest": manifest.to_dict()}
    Path(path).write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")


CSV_FIELDS = ("theorem", "params", "status", "examined", "counterexamples")


def write_csv(path: str | Path, reports: list[VerificationReport]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_FIELDS)
        for r in sorted(reports, key=lambda r: (r.theorem, json.dumps(r.params, sort_keys=True))):
            writer.writerow([r.theorem, json.dumps(r.params, sort_keys=True), r.status,
                             r.stats.get("examined", r.stats.get("samples", "")),
                             r.stats.get("counterexample_count", len(r.counterexamples))])


def summary_line(report: VerificationReport) -> str:
    params = " ".join(f"{k}={v}" for k, v in sorted(report.params.items()))
    extra = ""
    if "maximum" in report.stats:
        extra = f" max={report.stats['maximum']}"
    elif "examined" in report.stats:
        extra = f" examined={report.stats['examined']}"
    return f"{report.theorem} {params}: {report.status}{extra}"
