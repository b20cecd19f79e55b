"""Run the quick verification profile and print the summary table.

Run:  python demos/harness_quick.py
"""
from adlv.harness import summary_tsv, verify_all

print(summary_tsv(verify_all("quick"), timing=True), end="")
