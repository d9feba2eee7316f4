"""Command-line entry point: configure and serve the JSON API."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import uvicorn

from .assistant import ProviderConfig
from .errors import ConfigError
from .service import ServiceConfig, create_app

_VERBOSITY = {"debug": logging.DEBUG, "info": logging.INFO, "warning": logging.WARNING}


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="healthychoice",
        description="Nutrition-literacy simulation service",
    )
    parser.add_argument("--port", type=int, default=8000, help="listen port (default 8000)")
    parser.add_argument("--host", default="127.0.0.1", help="bind address (default 127.0.0.1)")
    parser.add_argument(
        "--data-dir", type=Path, default=Path("data"), help="event-log directory (default ./data)"
    )
    parser.add_argument("--catalog", type=Path, required=True, help="catalog JSON document")
    parser.add_argument("--scenarios", type=Path, required=True, help="scenario JSON document")
    parser.add_argument(
        "--provider", choices=["stub", "remote"], default="stub", help="assistant provider kind"
    )
    parser.add_argument("--provider-endpoint", help="chat-completion endpoint URL (remote only)")
    parser.add_argument("--model", help="model name (remote only)")
    parser.add_argument(
        "--verbosity", choices=sorted(_VERBOSITY), default="info", help="log verbosity"
    )
    return parser


def config_from_args(args: argparse.Namespace) -> ServiceConfig:
    provider = ProviderConfig(
        kind=args.provider,
        endpoint=args.provider_endpoint,
        model_name=args.model,
    )
    return ServiceConfig(
        catalog_path=args.catalog,
        scenarios_path=args.scenarios,
        data_dir=args.data_dir,
        listen_port=args.port,
        provider=provider,
        log_verbosity=args.verbosity,
    )


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    logging.basicConfig(level=_VERBOSITY[args.verbosity])
    try:
        config = config_from_args(args)
        app = create_app(config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    uvicorn.run(app, host=args.host, port=config.listen_port, log_level=args.verbosity)
    return 0


if __name__ == "__main__":
    sys.exit(main())
