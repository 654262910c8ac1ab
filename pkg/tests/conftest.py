import hypothesis

# fsum-heavy cases make per-example deadlines meaningless
hypothesis.settings.register_profile("suite", deadline=None, max_examples=60)
hypothesis.settings.load_profile("suite")
