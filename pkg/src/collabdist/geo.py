"""Great-circle geometry and coordinate-to-country resolution."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

# Radius used by every great-circle computation in this package.
EARTH_RADIUS_KM = 6377.0

# Nearest-vertex rescue radius for coastal / noisy coordinates.
FALLBACK_KM = 25.0


@dataclass(frozen=True)
class GeoPoint:
    """A latitude/longitude pair in degrees."""

    latitude: float
    longitude: float

    def __post_init__(self) -> None:
        if not -90.0 <= self.latitude <= 90.0:
            raise ValueError(f"latitude out of range: {self.latitude}")
        if not -180.0 <= self.longitude <= 180.0:
            raise ValueError(f"longitude out of range: {self.longitude}")


@dataclass(frozen=True)
class CountryBoundary:
    """A country polygon: one or more closed rings, first ring is the outer one."""

    country: str
    rings: tuple[tuple[GeoPoint, ...], ...]

    def __post_init__(self) -> None:
        if not self.rings:
            raise ValueError(f"boundary for {self.country} has no rings")
        for ring in self.rings:
            if len(ring) < 4:
                raise ValueError(f"ring of {self.country} has fewer than 4 points")
            if ring[0] != ring[-1]:
                raise ValueError(f"ring of {self.country} is not closed")

    @property
    def outer_ring(self) -> tuple[GeoPoint, ...]:
        return self.rings[0]


def geo_distance(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance in km between two points.

    The inner product is clamped to [-1, 1] so antipodal and coincident
    points never produce a domain error.
    """
    la, lb = math.radians(a.latitude), math.radians(b.latitude)
    dlon = math.radians(a.longitude) - math.radians(b.longitude)
    inner = math.sin(la) * math.sin(lb) + math.cos(la) * math.cos(lb) * math.cos(dlon)
    inner = max(-1.0, min(1.0, inner))
    return EARTH_RADIUS_KM * math.acos(inner)


def _on_segment(p: GeoPoint, a: GeoPoint, b: GeoPoint, eps: float = 1e-9) -> bool:
    ax, ay = a.longitude, a.latitude
    bx, by = b.longitude, b.latitude
    px, py = p.longitude, p.latitude
    cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
    if abs(cross) > eps:
        return False
    if min(ax, bx) - eps <= px <= max(ax, bx) + eps and min(ay, by) - eps <= py <= max(ay, by) + eps:
        return True
    return False


def point_in_ring(point: GeoPoint, ring: tuple[GeoPoint, ...]) -> bool:
    """Even-odd ray cast in the lon/lat plane; points on the boundary count as inside."""
    for a, b in zip(ring, ring[1:]):
        if _on_segment(point, a, b):
            return True
    inside = False
    px, py = point.longitude, point.latitude
    for a, b in zip(ring, ring[1:]):
        ay, by = a.latitude, b.latitude
        if (ay > py) != (by > py):
            x_cross = a.longitude + (py - ay) / (by - ay) * (b.longitude - a.longitude)
            if px < x_cross:
                inside = not inside
    return inside


def resolve_country(
    point: GeoPoint,
    boundaries: list[CountryBoundary],
    fallback_km: float = FALLBACK_KM,
) -> str | None:
    """Country code of the first outer ring containing the point.

    If no polygon contains it, the nearest boundary vertex within
    ``fallback_km`` decides; otherwise None.
    """
    for boundary in boundaries:
        if point_in_ring(point, boundary.outer_ring):
            return boundary.country
    best: tuple[float, str] | None = None
    for boundary in boundaries:
        for ring in boundary.rings:
            for vertex in ring:
                d = geo_distance(point, vertex)
                if d <= fallback_km and (best is None or d < best[0]):
                    best = (d, boundary.country)
    return best[1] if best else None


def load_boundaries(path: str) -> list[CountryBoundary]:
    """Read a GeoJSON-style polygon feature collection with an iso3 property.

    Polygon and MultiPolygon geometries are supported; a MultiPolygon yields
    one CountryBoundary per part so each outer ring is tested independently.
    """
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    boundaries: list[CountryBoundary] = []
    for feature in doc.get("features", []):
        iso3 = feature["properties"]["iso3"]
        geom = feature["geometry"]
        if geom["type"] == "Polygon":
            polys = [geom["coordinates"]]
        elif geom["type"] == "MultiPolygon":
            polys = geom["coordinates"]
        else:
            raise ValueError(f"unsupported geometry type: {geom['type']}")
        for poly in polys:
            rings = tuple(
                tuple(GeoPoint(latitude=lat, longitude=lon) for lon, lat in ring)
                for ring in poly
            )
            boundaries.append(CountryBoundary(country=iso3, rings=rings))
    return boundaries
