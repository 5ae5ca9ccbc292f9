from hypothesis import settings

# exact arithmetic makes single examples slow but never flaky; the deadline
# is noise here
settings.register_profile("suite", max_examples=60, deadline=None)
settings.load_profile("suite")
