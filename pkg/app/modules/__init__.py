from .registry import PresetMetadata, get_preset, list_presets

__all__ = ["PresetMetadata", "get_preset", "list_presets"]
