from dataclasses import dataclass
from typing import Any
from typing import Dict
from typing import Optional

from ._version import __version__

SCHEMA = "metaparadox/v1"


@dataclass(frozen=True)
class Metadata:
    """Header stamped on every JSON document the CLI writes."""

    command: str
    source: Optional[str] = None
    schema: str = SCHEMA
    version: str = __version__

    def as_dict(self) -> Dict[str, Any]:
        header: Dict[str, Any] = {"schema": self.schema, "version": self.version}
        header["command"] = self.command
        if self.source is not None:
            header["source"] = self.source
        return header
