var state = { clicks: 0, resets: 0 };

function click() {
  state.clicks += 1;
  return state.clicks;
}

function reset() {
  state.clicks = 0;
  state.resets += 1;
  return state.resets;
}

function summary() {
  return { clicks: state.clicks, resets: state.resets };
}

module.exports = { click: click, reset: reset, summary: summary };
