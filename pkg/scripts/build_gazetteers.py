"""Regenerate src/payner/data gazetteer files from the generator pools.

Every few pool entries are left out on purpose so that gazetteer features
are incomplete, as real name lists are. A handful of names the generator
never produces are added for the same reason.
"""

from pathlib import Path

from payner import _pools as P

DATA = Path(__file__).resolve().parents[1] / "src" / "payner" / "data"

EXTRA = {
    "banks.txt": ["Standard Chartered", "Nordea Bank", "Danske Bank", "Banco Bilbao Vizcaya Argentaria",
                  "Sparkasse", "Volksbank", "Raiffeisenbank"],
    "cities.txt": ["Amsterdam", "Rotterdam", "Rome", "Milan", "Lisbon", "Porto", "Prague", "Warsaw", "Oslo"],
    "countries.txt": ["Portugal", "Poland", "Norway", "Sweden", "Denmark", "Canada", "Australia"],
    "person_names.txt": ["Giuseppe", "Rossi", "Jansen", "De Vries", "Nowak", "Silva"],
}


def keep(i, every):
    return i % every != every - 1


def write(name, entries, header):
    seen, out = set(), []
    for e in list(entries) + EXTRA.get(name, []):
        if e not in seen:
            seen.add(e)
            out.append(e)
    (DATA / name).write_text(f"# {header}\n" + "\n".join(out) + "\n", encoding="utf-8")
    print(f"{name}: {len(out)} entries")


def main():
    write("banks.txt", [b for i, (b, _, _) in enumerate(P.BANKS) if keep(i, 5)], "bank names")
    cities = [c for lang in P.CITIES for i, (c, _) in enumerate(P.CITIES[lang]) if keep(i, 4)]
    write("cities.txt", cities, "city names")
    countries = [names[lang] for names in P.COUNTRY_NAMES.values() for lang in ("en", "de", "es", "fr")]
    write("countries.txt", [c for i, c in enumerate(countries) if keep(i, 6)], "country names")
    parts = []
    for table in (P.FIRST_NAMES, P.LAST_NAMES):
        for lang, names in table.items():
            parts += [n for i, n in enumerate(names) if keep(i, 4)]
    write("person_names.txt", parts, "first names and surnames")


if __name__ == "__main__":
    main()
