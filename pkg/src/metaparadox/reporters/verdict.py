import json
from typing import Any
from typing import Dict
from typing import TextIO

from metaparadox._metadata import Metadata
from metaparadox._paradox import ParadoxVerdict
from metaparadox.reporters.pool import pooled_result_to_dict


def verdict_to_dict(verdict: ParadoxVerdict) -> Dict[str, Any]:
    return {
        "classification": verdict.classification.value,
        "is_paradox": verdict.is_paradox,
        "model": verdict.model.value,
        "alpha": verdict.alpha,
        "study_directions": [direction.value for direction in verdict.study_directions],
        "pooled_direction": verdict.pooled_direction.value,
        "pooled": None if verdict.pooled is None else pooled_result_to_dict(verdict.pooled),
    }


class VerdictReporter:
    def __init__(self, verdict: ParadoxVerdict, metadata: Metadata) -> None:
        self.verdict = verdict
        self.metadata = metadata

    def render(self, outfile: TextIO, format: str = "json") -> None:
        renderer = getattr(self, f"render_as_{format}")
        renderer(outfile)

    def render_as_json(self, outfile: TextIO) -> None:
        document = self.metadata.as_dict()
        document["verdict"] = verdict_to_dict(self.verdict)
        json.dump(document, outfile, indent=2)
        outfile.write("\n")
