class Grade:
    """The outcome of an Audit. Subclass Pass or Fail to carry details."""

    @property
    def kind(self) -> str:
        return 'Pass' if isinstance(self, Pass) else 'Fail'

    def __repr__(self):
        return self.__class__.__name__


class Pass(Grade):
    pass


class Fail(Grade):
    pass
