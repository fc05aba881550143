"""The fixed 9-label IOB inventory shared with the dataset toolkit."""

LABELS = [
    "B-LOC", "B-MISC", "B-ORG", "B-PER",
    "I-LOC", "I-MISC", "I-ORG", "I-PER",
    "O",
]

label_to_id = {label: i for i, label in enumerate(LABELS)}
id_to_label = {i: label for i, label in enumerate(LABELS)}


def check_label(tag: str, where: str) -> str:
    if tag not in label_to_id:
        raise ValueError(f"{where}: tag {tag!r} outside the 9-label inventory")
    return tag
