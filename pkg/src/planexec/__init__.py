"""Plan-and-execute agent framework with an evaluation harness.

A plan controller decomposes tasks into browser and API sub-tasks,
propagates variables between them, and judges completion. Sub-agents plan
and execute locally: the API agent shortlists registry tools and runs
constrained step-programs; the browser agent grounds instructions in the
accessibility tree with a popup-bypassing feedback loop and a separate
extraction agent. An evaluation kit adds progressive sampling, a parallel
runner, metrics, run comparison, durable trajectories, and an insight
HTTP service for the dashboard.
"""

__version__ = "0.1.0"
