from hypothesis import HealthCheck, settings

# exact rational geometry has heavy-tailed run times; judge correctness, not speed
settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")
