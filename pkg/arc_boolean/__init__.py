"""Boolean operations on circular-arc polygons."""
