"""versesmith: two-model lyric verse generation.

A structure model learns the grammatical skeleton of consecutive lyric
lines; a vocabulary model learns to realize a skeleton with words given
preceding context. Composing the two under beam search produces verse
continuations that keep lyric structure while drawing on a wider
vocabulary than the lyrics corpus alone.
"""

__version__ = "0.1.0"
