from .controller import JobConfig, apply_overrides, default_parameters, parse_config
from .presets import SHIPPED_PRESETS, PresetBuild, PresetOptions, build_preset
from .runners import RUNNERS, Job, prepare, run_job
from .verification import CORRUPTIONS, CheckResult, run_verify

__all__ = [
    "CORRUPTIONS",
    "RUNNERS",
    "SHIPPED_PRESETS",
    "CheckResult",
    "Job",
    "JobConfig",
    "PresetBuild",
    "PresetOptions",
    "apply_overrides",
    "build_preset",
    "default_parameters",
    "parse_config",
    "prepare",
    "run_job",
    "run_verify",
]
