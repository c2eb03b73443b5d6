import hypothesis

hypothesis.settings.register_profile(
    "det", derandomize=True, deadline=None, max_examples=60)
hypothesis.settings.load_profile("det")
