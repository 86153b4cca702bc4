import hypothesis

# The whole suite must be reproducible run to run; derandomize pins the
# hypothesis example stream to the test function itself.
hypothesis.settings.register_profile(
    "deterministic",
    derandomize=True,
    max_examples=60,
    deadline=None,
)
hypothesis.settings.load_profile("deterministic")
