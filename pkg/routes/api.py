"""
JSON report routes: run a command, health check
"""
from flask import Blueprint, current_app, jsonify, request

from utils.errors import UsageError
from utils.runner import COMMANDS, EXIT_INTERNAL, EXIT_USAGE, RunConfig, run

api_bp = Blueprint('api', __name__, url_prefix='/api')


@api_bp.route('/health', methods=['GET'])
def health():
    """Service version and registered commands"""
    return jsonify({
        "success": True,
        "version": current_app.config.get("VERSION"),
        "commands": list(COMMANDS),
    })


@api_bp.route('/run', methods=['POST'])
def run_command():
    """Run one command and return the same report the CLI prints with --format json"""
    data = request.get_json(silent=True)
    try:
        config = RunConfig.from_dict(data)
        if config.input_path:
            raise UsageError("input_path is not accepted over HTTP; send the document inline")
        limit = current_app.config.get("MAX_SERVICE_WINDOW")
        if limit is not None and config.window > limit:
            raise UsageError(f"window must be at most {limit}")
        config.format = "json"
    except UsageError as e:
        return jsonify({"success": False, "message": str(e)}), 400

    report = run(config)
    body = report.to_dict()
    if report.exit_status == EXIT_USAGE:
        return jsonify({"success": False, "message": report.error["message"], "report": body}), 400
    if report.exit_status == EXIT_INTERNAL:
        current_app.logger.error(f"Internal error in {config.command}: {report.error['message']}")
        return jsonify({"success": False, "message": "Internal server error. Please try again later."}), 500
    body["success"] = report.passed and report.error is None
    return jsonify(body)
