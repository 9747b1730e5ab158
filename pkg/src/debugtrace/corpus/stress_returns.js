function noValue() {
  return;
}

function early(x) {
  if (x < 0) {
    return;
  }
  var acc = 0;
  while (x > 0) {
    acc += x;
    x -= 1;
  }
  return acc;
}

function nestedReturn(xs) {
  for (var i = 0; i < xs.length; i = i + 1) {
    if (xs[i] === null) {
      return i;
    }
  }
  return -1;
}
