"""
Gunicorn config for the report service: gunicorn -c gunicorn_config.py app:app
"""
import os

bind = "0.0.0.0:{}".format(os.environ.get("PORT", "8080"))
workers = int(os.environ.get("WEB_CONCURRENCY", "2"))
threads = 1
# Classification campaigns are CPU-bound and can run long
timeout = int(os.environ.get("LOOPCONF_REQUEST_TIMEOUT", "300"))
