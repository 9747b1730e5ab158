function binarySearch(sorted, target) {
  var low = 0;
  var high = sorted.length - 1;
  while (low <= high) {
    var mid = (low + high) / 2 - (low + high) % 2 / 2;
    if (sorted[mid] === target) {
      return mid;
    }
    if (sorted[mid] < target) {
      low = mid + 1;
    } else {
      high = mid - 1;
    }
  }
  return -1;
}

function linearSearch(items, predicate) {
  for (var i = 0; i < items.length; i = i + 1) {
    if (predicate(items[i])) {
      return i;
    }
  }
  return -1;
}

module.exports = { binarySearch: binarySearch, linearSearch: linearSearch };
