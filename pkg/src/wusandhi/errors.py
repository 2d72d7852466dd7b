"""Exception types shared across the front-end."""


class WuSandhiError(Exception):
    pass


class LexiconRowError(WuSandhiError):
    """A malformed line in a lexicon or mapping TSV."""

    def __init__(self, path, lineno, message):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = str(path)
        self.lineno = lineno
        self.message = message


class UnromanisableCharacter(WuSandhiError):
    def __init__(self, char, position):
        super().__init__(f"no romanisation for {char!r} at position {position}")
        self.char = char
        self.position = position


class ToneUnderivable(WuSandhiError):
    def __init__(self, syllable):
        super().__init__(f"cannot derive a tone for romanised syllable {syllable!r}")
        self.syllable = syllable


class MappingGap(WuSandhiError):
    def __init__(self, syllable, remainder):
        super().__init__(f"IPA table has no grapheme matching {remainder!r} in {syllable!r}")
        self.syllable = syllable
        self.remainder = remainder


class AmbiguousTokenization(WuSandhiError):
    def __init__(self, text, expected, got):
        super().__init__(f"{text!r} re-tokenizes as {got} instead of {expected}")
        self.text = text


class IncompleteSandhiTable(WuSandhiError):
    def __init__(self, missing):
        rows = ", ".join(f"{c}x{n}" for c, n in missing)
        super().__init__(f"sandhi table is missing rows: {rows}")
        self.missing = list(missing)


class DomainTooLong(WuSandhiError):
    def __init__(self, length, max_length):
        super().__init__(f"LD domain of {length} syllables exceeds table max {max_length}")
        self.length = length
        self.max_length = max_length


class IncomparableAnalyses(WuSandhiError):
    pass


class InsufficientData(WuSandhiError):
    pass


class RatingRowError(WuSandhiError):
    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class PipelineError(WuSandhiError):
    """A stage failure, tagged with the stage name."""

    def __init__(self, stage, cause):
        super().__init__(f"[{stage}] {cause}")
        self.stage = stage
        self.cause = cause


class ConfigError(WuSandhiError):
    pass
