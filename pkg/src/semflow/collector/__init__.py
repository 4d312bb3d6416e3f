from semflow.collector.clock import Clock, SimulatedClock, SystemClock
from semflow.collector.runner import CollectionJob, JobRunner, Scheduler, load_jobs

__all__ = [
    "Clock", "SystemClock", "SimulatedClock",
    "CollectionJob", "JobRunner", "Scheduler", "load_jobs",
]
