#!/usr/bin/env python3
"""Regenerate data/capitals.csv.

Coordinates and populations are approximate urban-area figures. Sunset on
24 Dec 2025 and sunrise on 25 Dec 2025 (local clock) come from the NOAA
solar position approximation with the standard -0.833 degree solar altitude.
The output is a reconstructed dataset, not an observed one.
"""
import csv
import math
import sys
from datetime import date

# name, lat, lon, population, utc offset in force on 24 Dec 2025
CAPITALS = [
    ("Tokyo", 35.6762, 139.6503, 37400000, 9),
    ("Delhi", 28.6139, 77.2090, 32900000, 5.5),
    ("Dhaka", 23.8103, 90.4125, 23200000, 6),
    ("Mexico City", 19.4326, -99.1332, 22300000, -6),
    ("Cairo", 30.0444, 31.2357, 22200000, 2),
    ("Beijing", 39.9042, 116.4074, 21800000, 8),
    ("Kinshasa", -4.4419, 15.2663, 17000000, 1),
    ("Buenos Aires", -34.6037, -58.3816, 15600000, -3),
    ("Manila", 14.5995, 120.9842, 14900000, 8),
    ("Moscow", 55.7558, 37.6173, 12600000, 3),
    ("Bogota", 4.7110, -74.0721, 11300000, -5),
    ("Jakarta", -6.2088, 106.8456, 11200000, 7),
    ("Lima", -12.0464, -77.0428, 11200000, -5),
    ("Paris", 48.8566, 2.3522, 11200000, 1),
    ("Bangkok", 13.7563, 100.5018, 11000000, 7),
    ("Seoul", 37.5665, 126.9780, 9900000, 9),
    ("London", 51.5074, -0.1278, 9600000, 0),
    ("Tehran", 35.6892, 51.3890, 9500000, 3.5),
    ("Luanda", -8.8390, 13.2894, 9000000, 1),
    ("Hanoi", 21.0278, 105.8342, 8400000, 7),
    ("Kuala Lumpur", 3.1390, 101.6869, 8400000, 8),
    ("Baghdad", 33.3152, 44.3661, 7700000, 3),
    ("Riyadh", 24.7136, 46.6753, 7700000, 3),
    ("Santiago", -33.4489, -70.6693, 6900000, -3),
    ("Madrid", 40.4168, -3.7038, 6700000, 1),
    ("Khartoum", 15.5007, 32.5599, 6300000, 2),
    ("Singapore", 1.3521, 103.8198, 5900000, 8),
    ("Ankara", 39.9334, 32.8597, 5700000, 3),
    ("Addis Ababa", 8.9806, 38.7578, 5500000, 3),
    ("Washington", 38.9072, -77.0369, 5400000, -5),
    ("Nairobi", -1.2921, 36.8219, 5300000, 3),
    ("Brasilia", -15.7939, -47.8828, 4800000, -3),
    ("Kabul", 34.5553, 69.2075, 4600000, 4.5),
    ("Rome", 41.9028, 12.4964, 4300000, 1),
    ("Abuja", 9.0765, 7.3986, 3800000, 1),
    ("Kampala", 0.3476, 32.5825, 3700000, 3),
    ("Berlin", 52.5200, 13.4050, 3700000, 1),
    ("Santo Domingo", 18.4861, -69.9312, 3600000, -4),
    ("Dakar", 14.7167, -17.4677, 3300000, 0),
    ("Sanaa", 15.3694, 44.1910, 3300000, 3),
    ("Athens", 37.9838, 23.7275, 3150000, 2),
    ("Pyongyang", 39.0392, 125.7625, 3100000, 9),
    ("Kyiv", 50.4501, 30.5234, 3000000, 2),
    ("Guatemala City", 14.6349, -90.5069, 3000000, -6),
    ("Tashkent", 41.2995, 69.2401, 2900000, 5),
    ("Caracas", 10.4806, -66.9036, 2900000, -4),
    ("Algiers", 36.7538, 3.0588, 2900000, 1),
    ("Lisbon", 38.7223, -9.1393, 2900000, 0),
    ("Taipei", 25.0330, 121.5654, 2600000, 8),
    ("Accra", 5.6037, -0.1870, 2600000, 0),
    ("Pretoria", -25.7479, 28.2293, 2600000, 2),
    ("Damascus", 33.5138, 36.2765, 2500000, 3),
    ("Baku", 40.4093, 49.8671, 2300000, 4),
    ("Phnom Penh", 11.5564, 104.9282, 2300000, 7),
    ("Amman", 31.9454, 35.9284, 2200000, 3),
    ("Havana", 23.1136, -82.3666, 2100000, -5),
    ("Quito", -0.1807, -78.4678, 2000000, -5),
    ("Vienna", 48.2082, 16.3738, 2000000, 1),
    ("Minsk", 53.9006, 27.5590, 2000000, 3),
    ("Rabat", 34.0209, -6.8416, 1900000, 0),
    ("Bucharest", 44.4268, 26.1025, 1800000, 2),
    ("Warsaw", 52.2297, 21.0122, 1800000, 1),
    ("Budapest", 47.4979, 19.0402, 1750000, 1),
    ("Stockholm", 59.3293, 18.0686, 1700000, 1),
    ("Ulaanbaatar", 47.8864, 106.9057, 1600000, 8),
    ("Kathmandu", 27.7172, 85.3240, 1500000, 5.75),
    ("Ottawa", 45.4215, -75.6972, 1400000, -5),
    ("Islamabad", 33.6844, 73.0479, 1200000, 5),
    ("Oslo", 59.9139, 10.7522, 1100000, 1),
    ("Canberra", -35.2809, 149.1300, 460000, 11),
    ("Wellington", -41.2865, 174.7762, 420000, 13),
]


def solar_event_utc_minutes(day, lat, lon, rising):
    """Minutes after 00:00 UTC of `day` for sunrise/sunset at (lat, lon)."""
    n = day.timetuple().tm_yday
    gamma = 2 * math.pi / 365 * (n - 1 + 0.5)
    eqtime = 229.18 * (0.000075 + 0.001868 * math.cos(gamma) - 0.032077 * math.sin(gamma)
                       - 0.014615 * math.cos(2 * gamma) - 0.040849 * math.sin(2 * gamma))
    decl = (0.006918 - 0.399912 * math.cos(gamma) + 0.070257 * math.sin(gamma)
            - 0.006758 * math.cos(2 * gamma) + 0.000907 * math.sin(2 * gamma)
            - 0.002697 * math.cos(3 * gamma) + 0.00148 * math.sin(3 * gamma))
    phi = math.radians(lat)
    zenith = math.radians(90.833)
    cos_ha = math.cos(zenith) / (math.cos(phi) * math.cos(decl)) - math.tan(phi) * math.tan(decl)
    ha = math.degrees(math.acos(max(-1.0, min(1.0, cos_ha))))
    if rising:
        return 720 - 4 * (lon + ha) - eqtime
    return 720 - 4 * (lon - ha) - eqtime


def local_hhmm(day, lat, lon, offset, rising):
    minutes = solar_event_utc_minutes(day, lat, lon, rising) + offset * 60
    minutes %= 1440
    h, m = divmod(int(round(minutes)), 60)
    return f"{h % 24:02d}:{m:02d}"


def main(out):
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["name", "lat_deg", "lon_deg", "population", "utc_offset_hours",
                     "dusk_local_hhmm", "dawn_local_hhmm"])
    for name, lat, lon, pop, off in CAPITALS:
        dusk = local_hhmm(date(2025, 12, 24), lat, lon, off, rising=False)
        dawn = local_hhmm(date(2025, 12, 25), lat, lon, off, rising=True)
        writer.writerow([name, f"{lat:.4f}", f"{lon:.4f}", pop, off, dusk, dawn])


if __name__ == "__main__":
    if len(sys.argv) > 1:
        with open(sys.argv[1], "w", newline="") as f:
            main(f)
    else:
        main(sys.stdout)
