"""HTTP service wrapping the core package.

The service is the single entry point for scenario-driven work: the CLI is
a thin client over :mod:`isokin.service.handlers`, either in process or
against a remote instance of :mod:`isokin.service.app`.
"""
