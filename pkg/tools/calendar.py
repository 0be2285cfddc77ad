"""US equity trading calendar for 2019-04-12..2024-04-11.

Weekdays minus NYSE full-closure days (fixed and observed holidays,
plus Juneteenth from 2022). Used by the fixture generator.
"""

import datetime as dt

HOLIDAYS = [
    # 2019
    "2019-04-19", "2019-05-27", "2019-07-04", "2019-09-02", "2019-11-28",
    "2019-12-25",
    # 2020
    "2020-01-01", "2020-01-20", "2020-02-17", "2020-04-10", "2020-05-25",
    "2020-07-03", "2020-09-07", "2020-11-26", "2020-12-25",
    # 2021
    "2021-01-01", "2021-01-18", "2021-02-15", "2021-04-02", "2021-05-31",
    "2021-07-05", "2021-09-06", "2021-11-25", "2021-12-24",
    # 2022 (New Year fell on Saturday: not observed; Juneteenth starts)
    "2022-01-17", "2022-02-21", "2022-04-15", "2022-05-30", "2022-06-20",
    "2022-07-04", "2022-09-05", "2022-11-24", "2022-12-26",
    # 2023
    "2023-01-02", "2023-01-16", "2023-02-20", "2023-04-07", "2023-05-29",
    "2023-06-19", "2023-07-04", "2023-09-04", "2023-11-23", "2023-12-25",
    # 2024 (through April 11)
    "2024-01-01", "2024-01-15", "2024-02-19", "2024-03-29",
]


def trading_days(start="2019-04-12", end="2024-04-11"):
    s = dt.date.fromisoformat(start)
    e = dt.date.fromisoformat(end)
    closed = {dt.date.fromisoformat(h) for h in HOLIDAYS}
    out = []
    day = s
    while day <= e:
        if day.weekday() < 5 and day not in closed:
            out.append(day)
        day += dt.timedelta(days=1)
    return out


if __name__ == "__main__":
    days = trading_days()
    print("trading days:", len(days))
    print("first:", days[0], "last:", days[-1])
    print("index 1132 (test start):", days[1132])
    print("index 1131 (train end):", days[1131])
