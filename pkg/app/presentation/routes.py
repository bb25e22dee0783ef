from flask import Blueprint, abort, current_app, jsonify, request

from ..modules import get_preset, list_presets
from ..modules.common.errors import ConfigError, LabError
from ..modules.common.export import dumps
from ..modules.jobs import default_parameters, parse_config, run_job

api_bp = Blueprint("api", __name__)


@api_bp.errorhandler(LabError)
def handle_lab_error(exc: LabError):
    current_app.logger.info("request failed: %s", exc.message)
    return jsonify(exc.to_dict()), 400


@api_bp.route("/presets")
def presets():
    return jsonify(
        [
            {
                "slug": preset.slug,
                "name": preset.name,
                "description": preset.description,
                "kind": preset.kind,
                "defaults": preset.defaults or {},
            }
            for preset in list_presets()
        ]
    )


def _json(report: dict):
    return current_app.response_class(dumps(report), mimetype="application/json")


def _job_config(slug: str, body: dict):
    if get_preset(slug) is None:
        abort(404)
    config, errors = parse_config(body, {"preset": slug})
    if errors:
        raise ConfigError("invalid job configuration", errors)
    # files are only written by the command line
    return config.model_copy(update={"out": None})


@api_bp.route("/presets/<slug>")
def preset_detail(slug: str):
    config = _job_config(slug, {"algebra": {"preset": slug, "params": dict(request.args)}})
    return _json(run_job("derive", config))


@api_bp.route("/presets/<slug>/cs", methods=["POST"])
def coherent_states(slug: str):
    body = request.get_json(silent=True) or {}
    if not isinstance(body, dict):
        raise ConfigError("invalid job configuration", {"config": "expected a JSON object"})
    body.setdefault("algebra", {"preset": slug})
    config = _job_config(slug, body)
    return _json(run_job("cs", config))


@api_bp.route("/defaults")
def defaults():
    return jsonify(default_parameters())
