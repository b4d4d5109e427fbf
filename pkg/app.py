"""
Main Flask application entry point for the loopconf report service
"""
import os

from flask import Flask, jsonify

from config import Config


def create_app(config_class=Config):
    """Application factory pattern."""
    app = Flask(__name__)
    app.config.from_object(config_class)

    @app.errorhandler(404)
    def handle_404_error(e):
        return jsonify({"success": False, "message": "Not found."}), 404

    @app.errorhandler(500)
    def handle_500_error(e):
        return jsonify({"success": False, "message": "Internal server error. Please try again later."}), 500

    from routes import api_bp
    app.register_blueprint(api_bp)

    return app


# WSGI entry point: gunicorn app:app
app = create_app()
application = app

if __name__ == "__main__":
    port = int(os.environ.get("PORT", 8080))
    app.run(host="0.0.0.0", port=port, debug=os.environ.get("FLASK_DEBUG", "false").lower() in ("true", "1"))
