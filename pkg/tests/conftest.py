# Keeps the tests directory importable (specgen, oracles) under pytest.
