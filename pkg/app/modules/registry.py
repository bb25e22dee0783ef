from dataclasses import dataclass
from typing import Any, Dict, List, Optional


@dataclass(frozen=True)
class PresetMetadata:
    slug: str
    name: str
    description: str
    builder: Any
    kind: str = "infinite"
    defaults: Dict[str, str] | None = None


_PRESETS: Dict[str, PresetMetadata] = {}


def _load_default_presets() -> None:
    """Import the shipped presets and populate the registry exactly once."""
    if _PRESETS:
        return

    from .jobs.presets import SHIPPED_PRESETS

    for metadata in SHIPPED_PRESETS:
        register_preset(metadata)


def register_preset(metadata: PresetMetadata) -> None:
    _PRESETS[metadata.slug] = metadata


def list_presets() -> List[PresetMetadata]:
    _load_default_presets()
    return sorted(_PRESETS.values(), key=lambda p: p.slug)


def get_preset(slug: str) -> Optional[PresetMetadata]:
    _load_default_presets()
    return _PRESETS.get(slug)
