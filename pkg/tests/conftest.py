from hypothesis import HealthCheck, settings

# derandomized so that repeated runs exercise the same examples
settings.register_profile(
    "repo", derandomize=True, deadline=None, suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")
