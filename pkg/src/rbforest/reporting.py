"""Serialization of verification reports: text, JSON, CSV, and figures."""
from __future__ import annotations

import csv
import json
from pathlib import Path

from .hopf import SuiteReport


def report_as_dict(report: SuiteReport) -> dict:
    return {
        "config": report.config,
        "corpus_by_degree": {str(d): n for d, n in sorted(report.corpus_by_degree.items())},
        "all_passed": report.all_passed,
        "laws": [
            {
                "law": law.law,
                "instances": law.instances,
                "passed": law.passed,
                "failed": law.failed,
                "advisory": law.advisory,
                "seconds": round(law.seconds, 3),
                "first_counterexample": (
                    None
                    if law.first_counterexample is None
                    else {
                        "inputs": law.first_counterexample.inputs,
                        "lhs": law.first_counterexample.lhs,
                        "rhs": law.first_counterexample.rhs,
                    }
                ),
            }
            for law in report.laws
        ],
    }


def render_text(report: SuiteReport) -> str:
    width = max(len(law.law) for law in report.laws)
    lines = []
    config = report.config
    corpus = (
        f"degree <= {config['max_degree']}, alphabet {{{', '.join(config['alphabet']) or ''}}}"
    )
    if config["samples"] is None:
        corpus += (
            f", exhaustive ({config['singles']} forests, {config['pairs']} pairs, "
            f"{config['triples']} triples)"
        )
    else:
        corpus += f", {config['samples']} seeded samples (seed {config['seed']})"
    lines.append(f"corpus: {corpus}")
    if config.get("mutate"):
        lines.append(f"mutation injected: {config['mutate']}")
    for law in report.laws:
        status = "PASS" if law.failed == 0 else "FAIL"
        tag = " (advisory)" if law.advisory else ""
        lines.append(
            f"{status}  {law.law:<{width}}  {law.passed}/{law.instances}{tag}"
        )
        if law.first_counterexample is not None:
            ce = law.first_counterexample
            inputs = ", ".join(f"{k} = {v}" for k, v in ce.inputs.items())
            lines.append(f"      counterexample: {inputs}")
            lines.append(f"      lhs: {ce.lhs}")
            lines.append(f"      rhs: {ce.rhs}")
    lines.append("result: " + ("all laws hold" if report.all_passed else "LAW FAILURES"))
    return "\n".join(lines)


def write_json(report: SuiteReport, path: str | Path) -> None:
    Path(path).write_text(json.dumps(report_as_dict(report), indent=2) + "\n")


def write_csv(report: SuiteReport, path: str | Path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["law", "instances", "passed", "failed", "advisory", "seconds"])
        for law in report.laws:
            writer.writerow(
                [
                    law.law,
                    law.instances,
                    law.passed,
                    law.failed,
                    law.advisory,
                    f"{law.seconds:.3f}",
                ]
            )


def write_figures(report: SuiteReport, directory: str | Path) -> list[Path]:
    """Render the report as figures; returns the files written."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    laws = report.laws
    names = [law.law for law in laws]
    passed = [law.passed for law in laws]
    failed = [law.failed for law in laws]
    positions = range(len(laws))

    fig, ax = plt.subplots(figsize=(9, 0.45 * len(laws) + 1.5))
    ax.barh(positions, passed, color="#2d7f5e", label="passed")
    ax.barh(positions, failed, left=passed, color="#b0413e", label="failed")
    ax.set_yticks(list(positions))
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("instances")
    ax.set_title("verification results per law")
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    path = directory / "law_results.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    degrees = sorted(report.corpus_by_degree)
    counts = [report.corpus_by_degree[d] for d in degrees]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar([str(d) for d in degrees], counts, color="#39618f")
    ax.set_xlabel("degree (vertex count)")
    ax.set_ylabel("forests in corpus")
    ax.set_title("corpus composition")
    fig.tight_layout()
    path = directory / "corpus_by_degree.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    return written
