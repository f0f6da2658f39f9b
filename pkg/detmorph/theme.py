INDIGO = "#5C7CFA"
ACCENT = "#14B8A6"
GRAY   = "#8787AF"

VERDICT_STYLES = {
    "true": "green",
    "true-up-to-bound": ACCENT,
    "false": "red",
    "pass": "green",
    "fail": "red",
    "skipped": GRAY,
}
