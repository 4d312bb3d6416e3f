from semflow.gateway.config import GatewayConfig
from semflow.gateway.registry import Registry
from semflow.gateway.bindings import BindingStore, FetchSpec, Fetcher, SourceBinding
from semflow.gateway.pipeline import PipelineSpec, parse_pipeline, run_pipeline
from semflow.gateway.app import create_app

__all__ = [
    "GatewayConfig", "Registry", "SourceBinding", "FetchSpec", "Fetcher", "BindingStore",
    "PipelineSpec", "parse_pipeline", "run_pipeline", "create_app",
]
