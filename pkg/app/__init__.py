from flask import Flask


def create_app() -> Flask:
    """Application factory for the deformed-algebra coherent states lab."""
    app = Flask(__name__)
    app.config.from_mapping(SECRET_KEY="dev", JSON_SORT_KEYS=True)

    from .presentation.cli import lab
    from .presentation.routes import api_bp

    app.register_blueprint(api_bp)
    app.cli.add_command(lab)
    return app
