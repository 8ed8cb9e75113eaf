"""
Script to write the sample networks and schedules to fixtures/.
Run with: python write_fixtures.py
"""
from pathlib import Path

from dotenv import load_dotenv

from sheafnet.seed.sample_networks import NETWORKS, SCHEDULES

load_dotenv()

FIXTURES_DIR = Path(__file__).parent / "fixtures"


def main():
    """Write one JSON document per sample."""
    FIXTURES_DIR.mkdir(exist_ok=True)
    for name, build in {**NETWORKS, **SCHEDULES}.items():
        path = FIXTURES_DIR / f"{name}.json"
        path.write_text(build().model_dump_json(indent=2, exclude_defaults=True) + "\n", encoding="utf-8")
        print(f"wrote {path}")
    print("Done!")


if __name__ == "__main__":
    main()
